#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"
#include "oamloop/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace oamloop::numerics {

namespace {

void check_degree(int l, int m) {
  if (l < 0 || std::abs(m) > l || l > max_legendre_degree)
    throw DomainError("invalid spherical-harmonic degree (l=" +
                      std::to_string(l) + ", m=" + std::to_string(m) + ")");
}

// Integer power of a complex number; w^0 == 1 even for w == 0.
cplx ipow(cplx w, int n) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < n; ++i)
    r *= w;
  return r;
}

} // namespace

double legendre_derivative(int l, int m, double x) {
  if (m > l)
    return 0.0;
  // Q_m^m = (2m-1)!!
  double q_mm = 1.0;
  for (int k = 1; k <= m; ++k)
    q_mm *= 2.0 * k - 1.0;
  if (l == m)
    return q_mm;
  double q_prev = q_mm;
  double q = (2.0 * m + 1.0) * x * q_mm;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double next =
        ((2.0 * ll - 1.0) * x * q - (ll + m - 1.0) * q_prev) / (ll - m);
    q_prev = q;
    q = next;
  }
  return q;
}

double harmonic_norm(int l, int m) {
  const int a = std::abs(m);
  double ratio = 1.0; // (l-a)!/(l+a)!
  for (int k = l - a + 1; k <= l + a; ++k)
    ratio /= k;
  return std::sqrt((2.0 * l + 1.0) / (4.0 * units::pi) * ratio);
}

double assoc_legendre(int l, int m, double x) {
  check_degree(l, m);
  if (x < -1.0 || x > 1.0)
    throw DomainError("assoc_legendre argument outside [-1, 1]");
  const int a = std::abs(m);
  const double s = std::pow(std::max(0.0, 1.0 - x * x), 0.5 * a);
  double value = harmonic_norm(l, a) * s * legendre_derivative(l, a, x);
  // Condon-Shortley phase for m > 0; Y_{l,-a} = (-1)^a conj(Y_{l,a}) cancels
  // it for m < 0.
  if (m > 0 && (a % 2 == 1))
    value = -value;
  return value;
}

cplx spherical_harmonic(int l, int m, double theta, double phi) {
  return assoc_legendre(l, m, std::cos(theta)) *
         std::exp(cplx(0.0, m * phi));
}

cplx spherical_harmonic(int l, int m, const Vec3 &direction) {
  check_degree(l, m);
  const double r = direction.norm();
  if (r == 0.0)
    throw DomainError("spherical_harmonic: zero direction vector");
  const Vec3 n = direction / r;
  const int a = std::abs(m);
  const cplx w = m >= 0 ? cplx(n.x(), n.y()) : cplx(n.x(), -n.y());
  const double phase = (m > 0 && a % 2 == 1) ? -1.0 : 1.0;
  return phase * harmonic_norm(l, a) * ipow(w, a) *
         legendre_derivative(l, a, n.z());
}

CVec3 spherical_harmonic_angular_gradient(int l, int m, const Vec3 &unit) {
  check_degree(l, m);
  const int a = std::abs(m);
  const double t = unit.z();
  const cplx w = m >= 0 ? cplx(unit.x(), unit.y()) : cplx(unit.x(), -unit.y());
  const CVec3 e_w = m >= 0 ? CVec3(1.0, I, 0.0) : CVec3(1.0, -I, 0.0);
  const CVec3 n = unit.cast<cplx>();
  const double phase = (m > 0 && a % 2 == 1) ? -1.0 : 1.0;
  const double norm = phase * harmonic_norm(l, a);

  const double q = legendre_derivative(l, a, t);
  const double dq = legendre_derivative(l, a + 1, t);
  CVec3 grad = ipow(w, a) * dq * (CVec3(0.0, 0.0, 1.0) - t * n);
  if (a > 0)
    grad += static_cast<double>(a) * ipow(w, a - 1) * q * (e_w - w * n);
  return norm * grad;
}

double laguerre(int p, int alpha, double x) {
  if (p < 0 || alpha < 0)
    throw DomainError("laguerre: negative order");
  double l_prev = 1.0;
  if (p == 0)
    return l_prev;
  double l_cur = 1.0 + alpha - x;
  for (int k = 1; k < p; ++k) {
    const double next =
        ((2.0 * k + 1.0 + alpha - x) * l_cur - (k + alpha) * l_prev) / (k + 1);
    l_prev = l_cur;
    l_cur = next;
  }
  return l_cur;
}

} // namespace oamloop::numerics
