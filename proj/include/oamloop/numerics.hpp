#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace oamloop {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;

inline constexpr cplx I{0.0, 1.0};

} // namespace oamloop

namespace oamloop::numerics {

inline constexpr int max_legendre_degree = 16;

// ---------------------------------------------------------------------------
// Special functions

/// Orthonormalized associated Legendre function (Condon-Shortley phase),
/// such that Y_lm(theta, phi) = assoc_legendre(l, m, cos theta) e^{i m phi}
/// is orthonormal on the unit sphere. Negative m follows
/// Y_{l,-m} = (-1)^m conj(Y_lm). Throws DomainError unless 0 <= |m| <= l <= 16.
double assoc_legendre(int l, int m, double x);

/// d^m P_l / dx^m, the polynomial factor of P_l^m without (1-x^2)^{m/2}.
/// Zero for m > l.
double legendre_derivative(int l, int m, double x);

/// sqrt((2l+1)/(4 pi) (l-|m|)!/(l+|m|)!)
double harmonic_norm(int l, int m);

cplx spherical_harmonic(int l, int m, double theta, double phi);

/// Y_lm at the direction of a non-zero Cartesian vector (pole-safe).
cplx spherical_harmonic(int l, int m, const Vec3 &direction);

/// r * grad Y_lm for |r| = 1, i.e. the tangential gradient on the unit
/// sphere, evaluated without dividing by sin(theta).
CVec3 spherical_harmonic_angular_gradient(int l, int m, const Vec3 &unit);

/// Generalized Laguerre polynomial L_p^alpha(x) by three-term recurrence.
double laguerre(int p, int alpha, double x);

// ---------------------------------------------------------------------------
// Quadrature

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule mapped to [a, b]; nodes are exactly
/// mirror-symmetric about the midpoint.
GaussRule gauss_legendre(int n, double a, double b);

/// Product grid: Gauss-Legendre radial nodes (weights carry r^2) times a
/// Gauss-Legendre(cos theta) x uniform(phi) angular rule.
struct QuadratureGrid {
  std::vector<double> radial_nodes;
  std::vector<double> radial_weights; ///< include the r^2 Jacobian
  std::vector<Vec3> angular_nodes;    ///< unit vectors
  std::vector<double> angular_weights;
  int radial_count = 0;
  int angular_order = 0; ///< exact for spherical harmonics up to this degree

  std::size_t size() const {
    return radial_nodes.size() * angular_nodes.size();
  }
  Vec3 point(std::size_t ir, std::size_t ia) const {
    return radial_nodes[ir] * angular_nodes[ia];
  }
  double weight(std::size_t ir, std::size_t ia) const {
    return radial_weights[ir] * angular_weights[ia];
  }
};

/// Angular rule exact for spherical-harmonic products of total degree
/// `order`: ceil((order+1)/2) Gauss-Legendre nodes in cos(theta), order+1
/// equally spaced azimuths.
void build_angular_rule(int order, QuadratureGrid &grid);

/// Minimum angular order allowed for a basis whose largest l is l_basis_max.
constexpr int minimum_angular_order(int l_basis_max) {
  return 2 * l_basis_max + 4;
}

/// Throws DomainError when the parameters are out of range or the angular
/// order is below minimum_angular_order(l_basis_max).
QuadratureGrid build_grid(double r_min, double r_max, int radial_count,
                          int angular_order, int l_basis_max = 0);

/// Radial segments [breaks[i], breaks[i+1]] each get their own
/// Gauss-Legendre rule with counts[i] nodes.
QuadratureGrid build_composite_grid(std::span<const double> breaks,
                                    std::span<const int> counts,
                                    int angular_order, int l_basis_max = 0);

/// Composite polar rule: cos(theta) split at the given interior breakpoints,
/// `nodes_per_segment` Gauss-Legendre nodes each, `azimuth_count` phis.
void build_composite_angular_rule(std::span<const double> cos_breaks,
                                  int nodes_per_segment, int azimuth_count,
                                  QuadratureGrid &grid);

/// Integrate samples laid out as [ir * n_ang + ia] over the grid.
double integrate(const QuadratureGrid &grid, std::span<const double> values);
cplx integrate(const QuadratureGrid &grid, std::span<const cplx> values);

// ---------------------------------------------------------------------------
// Summation and differences

/// Order-fixed pairwise summation; result is independent of threading.
template <typename T> T pairwise_sum(std::span<const T> v) {
  if (v.empty())
    return T{};
  if (v.size() <= 8) {
    T s = v[0];
    for (std::size_t i = 1; i < v.size(); ++i)
      s += v[i];
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

using ScalarField = std::function<cplx(const Vec3 &)>;

/// Second-order central-difference gradient.
CVec3 central_difference_gradient(const ScalarField &f, const Vec3 &point,
                                  double h);

} // namespace oamloop::numerics
