#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"
#include "oamloop/numerics.hpp"

#include <catch_amalgamated.hpp>

#include <boost/math/special_functions/laguerre.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace oamloop;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

// Rodrigues: P_l(x) = 1/(2^l l!) d^l/dx^l (x^2 - 1)^l, then
// P_l^m = (-1)^m (1 - x^2)^{m/2} d^m P_l / dx^m. Exact integer polynomial
// coefficients, evaluated in long double.
long double rodrigues(int l, int m, long double x) {
  std::vector<long double> c(2 * l + 1, 0.0L); // coefficients of x^k
  long double binom = 1.0L;
  for (int k = 0; k <= l; ++k) {
    c[2 * k] = binom * (((l - k) % 2) ? -1.0L : 1.0L);
    binom = binom * (l - k) / (k + 1);
  }
  for (int d = 0; d < l + m; ++d)
    for (std::size_t k = 0; k + 1 < c.size(); ++k)
      c[k] = c[k + 1] * static_cast<long double>(k + 1);
  c.resize(c.size() - (l + m));
  long double p = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it)
    p = p * x + *it;
  long double fact = 1.0L;
  for (int k = 1; k <= l; ++k)
    fact *= 2 * k; // 2^l l!
  const long double sign = (m % 2) ? -1.0L : 1.0L;
  return sign * std::pow(1.0L - x * x, m / 2.0L) * p / fact;
}

long double factorial(int n) {
  long double f = 1.0L;
  for (int k = 2; k <= n; ++k)
    f *= k;
  return f;
}

double normalized_rodrigues(int l, int m, double x) {
  const long double norm = std::sqrt((2 * l + 1) / (4 * std::numbers::pi_v<long double>) *
                                     factorial(l - m) / factorial(l + m));
  return static_cast<double>(norm * rodrigues(l, m, x));
}

double shell_integral(int radial_nodes) {
  const auto g = numerics::build_grid(0.0, 26.8, radial_nodes, 8);
  std::vector<double> f(g.size());
  for (std::size_t ir = 0; ir < g.radial_nodes.size(); ++ir)
    for (std::size_t ia = 0; ia < g.angular_nodes.size(); ++ia) {
      const double r = g.radial_nodes[ir];
      f[ir * g.angular_nodes.size() + ia] =
          std::exp(-(r - 6.7) * (r - 6.7) / (2 * 0.9 * 0.9));
    }
  return numerics::integrate(g, f);
}

} // namespace

TEST_CASE("assoc_legendre examples") {
  using numerics::assoc_legendre;
  CHECK_THAT(assoc_legendre(0, 0, 0.3), WithinAbs(1 / std::sqrt(4 * pi), 1e-15));
  CHECK_THAT(assoc_legendre(1, 0, 1.0), WithinAbs(std::sqrt(3 / (4 * pi)), 1e-15));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double x = u(rng);
    CHECK_THAT(assoc_legendre(5, 3, x),
               WithinAbs(normalized_rodrigues(5, 3, x), 1e-13));
  }
}

TEST_CASE("assoc_legendre matches Rodrigues for all l <= 10") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int l = 0; l <= 10; ++l)
    for (int m = 0; m <= l; ++m)
      for (int i = 0; i < 5; ++i) {
        const double x = u(rng);
        INFO("l=" << l << " m=" << m << " x=" << x);
        CHECK_THAT(numerics::assoc_legendre(l, m, x),
                   WithinAbs(normalized_rodrigues(l, m, x), 1e-11));
      }
}

TEST_CASE("spherical harmonics agree with Boost up to l = 16") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0.0, pi), ph(0.0, 2 * pi);
  for (int l = 0; l <= 16; ++l)
    for (int m = -l; m <= l; ++m) {
      const double t = th(rng), p = ph(rng);
      const cplx ours = numerics::spherical_harmonic(l, m, t, p);
      const cplx ref = boost::math::spherical_harmonic(l, m, t, p);
      INFO("l=" << l << " m=" << m);
      CHECK(std::abs(ours - ref) < 1e-12);
      const Vec3 dir(std::sin(t) * std::cos(p), std::sin(t) * std::sin(p),
                     std::cos(t));
      CHECK(std::abs(numerics::spherical_harmonic(l, m, dir) - ref) < 1e-12);
    }
}

TEST_CASE("spherical harmonic at the poles has no NaN") {
  for (int l = 0; l <= 6; ++l)
    for (int m = -l; m <= l; ++m) {
      const cplx y = numerics::spherical_harmonic(l, m, Vec3(0, 0, -2.0));
      CHECK(std::isfinite(y.real()));
      CHECK(std::isfinite(y.imag()));
      const CVec3 g =
          numerics::spherical_harmonic_angular_gradient(l, m, Vec3(0, 0, 1));
      CHECK(g.allFinite());
    }
}

TEST_CASE("assoc_legendre rejects invalid degrees") {
  CHECK_THROWS_AS(numerics::assoc_legendre(2, 3, 0.1), DomainError);
  CHECK_THROWS_AS(numerics::assoc_legendre(-1, 0, 0.1), DomainError);
  CHECK_THROWS_AS(numerics::assoc_legendre(17, 0, 0.1), DomainError);
}

TEST_CASE("laguerre examples and Boost oracle") {
  CHECK(numerics::laguerre(0, 3, 7.5) == 1.0);
  CHECK_THAT(numerics::laguerre(1, 2, 1.0), WithinAbs(2.0, 1e-15));
  CHECK(numerics::laguerre(2, 0, 0.0) == 1.0);
  for (int p = 0; p <= 8; ++p)
    for (int a : {0, 1, 5, 17, 40})
      for (double x : {0.0, 0.3, 2.0, 11.0, 35.0}) {
        const double ref = boost::math::laguerre(p, a, x);
        INFO("p=" << p << " a=" << a << " x=" << x);
        CHECK_THAT(numerics::laguerre(p, a, x),
                   WithinAbs(ref, 1e-12 * std::max(1.0, std::abs(ref))));
      }
}

TEST_CASE("grid weights and volumes") {
  const auto g = numerics::build_grid(0.0, 9.0, 32, 40);
  double area = 0.0;
  for (double w : g.angular_weights) {
    CHECK(w > 0.0);
    area += w;
  }
  for (double w : g.radial_weights)
    CHECK(w > 0.0);
  CHECK_THAT(area, WithinRel(4 * pi, 1e-12));

  std::vector<double> one(g.size(), 1.0);
  CHECK_THAT(numerics::integrate(g, one), WithinRel(4 * pi / 3 * 729.0, 1e-10));

  const auto shell = numerics::build_grid(5.0, 9.0, 16, 14);
  std::vector<double> ones(shell.size(), 1.0);
  CHECK_THAT(numerics::integrate(shell, ones),
             WithinRel(4 * pi / 3 * (729.0 - 125.0), 1e-10));
}

TEST_CASE("grid orthonormality of spherical harmonics") {
  const int lmax = 5;
  const auto g = numerics::build_grid(0.0, 1.0, 16,
                                      numerics::minimum_angular_order(lmax), lmax);
  auto sphere = [&](int l1, int m1, int l2, int m2) {
    cplx s{0.0, 0.0};
    for (std::size_t ia = 0; ia < g.angular_nodes.size(); ++ia)
      s += g.angular_weights[ia] *
           numerics::spherical_harmonic(l1, m1, g.angular_nodes[ia]) *
           std::conj(numerics::spherical_harmonic(l2, m2, g.angular_nodes[ia]));
    return s;
  };
  CHECK(std::abs(sphere(2, 1, 2, 1) - 1.0) < 1e-12);
  CHECK(std::abs(sphere(3, 2, 1, 0)) < 1e-12);
  double worst = 0.0;
  for (int l1 = 0; l1 <= lmax; ++l1)
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 = 0; l2 <= lmax; ++l2)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const double target = (l1 == l2 && m1 == m2) ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(sphere(l1, m1, l2, m2) - target));
        }
  CHECK(worst < 1e-10);
}

TEST_CASE("build_grid validates its parameters") {
  CHECK_THROWS_AS(numerics::build_grid(0.0, 10.0, 32, 13, 5), DomainError);
  CHECK_NOTHROW(numerics::build_grid(0.0, 10.0, 32, 14, 5));
  CHECK_THROWS_AS(numerics::build_grid(3.0, 3.0, 32, 14), DomainError);
  CHECK_THROWS_AS(numerics::build_grid(-1.0, 3.0, 32, 14), DomainError);
  CHECK_THROWS_AS(numerics::build_grid(0.0, 3.0, 15, 14), DomainError);
}

TEST_CASE("composite grid integrates each segment") {
  const double breaks[] = {0.0, 0.5, 26.8};
  const int counts[] = {16, 128};
  const auto g = numerics::build_composite_grid(breaks, counts, 40, 5);
  CHECK(g.radial_nodes.size() == 144);
  std::vector<double> one(g.size(), 1.0);
  CHECK_THAT(numerics::integrate(g, one),
             WithinRel(4 * pi / 3 * std::pow(26.8, 3), 1e-10));
}

TEST_CASE("halving radial nodes barely changes a shell integral") {
  const double fine = shell_integral(128);
  const double coarse = shell_integral(64);
  CHECK(std::abs(fine - coarse) / fine < 1e-8);
}

TEST_CASE("gauss_legendre nodes are mirror symmetric") {
  const auto rule = numerics::gauss_legendre(33, -2.0, 4.0);
  const std::size_t n = rule.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(rule.nodes[i] + rule.nodes[n - 1 - i] == 2.0);
    CHECK(rule.weights[i] == rule.weights[n - 1 - i]);
  }
}

TEST_CASE("central difference gradient examples") {
  const auto sq = [](const Vec3 &p) { return cplx(p.x() * p.x(), 0.0); };
  const CVec3 g = numerics::central_difference_gradient(sq, Vec3(1, 0, 0), 1e-4);
  CHECK(std::abs(g.x() - 2.0) < 1e-7);
  CHECK(std::abs(g.y()) < 1e-7);
  CHECK(std::abs(g.z()) < 1e-7);

  const double c10 = std::sqrt(3 / (4 * pi));
  const auto y10 = [](const Vec3 &p) {
    return p.norm() * numerics::spherical_harmonic(1, 0, p);
  };
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const Vec3 p(u(rng), u(rng), u(rng));
    const CVec3 d = numerics::central_difference_gradient(y10, p, 1e-4);
    CHECK((d - CVec3(0, 0, c10)).norm() < 1e-7);
  }

  const auto constant = [](const Vec3 &) { return cplx(4.0, -1.0); };
  CHECK(numerics::central_difference_gradient(constant, Vec3(1, 2, 3), 1e-3)
            .norm() < 1e-12);
}

TEST_CASE("pairwise_sum is exact on integers and order fixed") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = static_cast<double>(i);
  CHECK(numerics::pairwise_sum<double>(v) == 499500.0);
  std::vector<double> w(777);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  for (auto &x : w)
    x = n(rng);
  const double a = numerics::pairwise_sum<double>(w);
  const double b = numerics::pairwise_sum<double>(w);
  CHECK(a == b);
}

TEST_CASE("unit conversions round trip") {
  for (double ev : {1e-3, 0.5, 8.0, 13.6, 1e4}) {
    const double back = units::hartree_to_ev(units::ev_to_hartree(ev));
    CHECK(std::abs(back - ev) / ev < 1e-14);
  }
  CHECK_THAT(units::vacuum_permeability_au,
             WithinRel(4 * pi / (137.035999084 * 137.035999084), 1e-9));
  CHECK_THAT(units::nm_to_bohr(units::bohr_in_nm), WithinRel(1.0, 1e-15));
}
