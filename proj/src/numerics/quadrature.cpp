#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"
#include "oamloop/numerics.hpp"

#include <cmath>
#include <string>

namespace oamloop::numerics {

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1)
    throw DomainError("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(units::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    if (2 * i + 1 == n)
      x = 0.0; // odd n: the middle node is exactly the midpoint
    {
      // Recompute the derivative at the converged node for the weight.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

void build_angular_rule(int order, QuadratureGrid &grid) {
  const int n_theta = (order + 2) / 2; // ceil((order+1)/2)
  const int n_phi = order + 1;
  const GaussRule polar = gauss_legendre(n_theta, -1.0, 1.0);
  grid.angular_nodes.clear();
  grid.angular_weights.clear();
  grid.angular_nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int it = 0; it < n_theta; ++it) {
    const double t = polar.nodes[it];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * units::pi * ip / n_phi;
      grid.angular_nodes.emplace_back(s * std::cos(phi), s * std::sin(phi), t);
      grid.angular_weights.push_back(polar.weights[it] * 2.0 * units::pi /
                                     n_phi);
    }
  }
  grid.angular_order = order;
}

void build_composite_angular_rule(std::span<const double> cos_breaks,
                                  int nodes_per_segment, int azimuth_count,
                                  QuadratureGrid &grid) {
  std::vector<double> edges{-1.0};
  edges.insert(edges.end(), cos_breaks.begin(), cos_breaks.end());
  edges.push_back(1.0);
  grid.angular_nodes.clear();
  grid.angular_weights.clear();
  for (std::size_t s = 0; s + 1 < edges.size(); ++s) {
    if (!(edges[s + 1] > edges[s]))
      throw DomainError("composite angular rule: breakpoints must increase");
    const GaussRule polar =
        gauss_legendre(nodes_per_segment, edges[s], edges[s + 1]);
    for (int it = 0; it < nodes_per_segment; ++it) {
      const double t = polar.nodes[it];
      const double sn = std::sqrt(std::max(0.0, 1.0 - t * t));
      for (int ip = 0; ip < azimuth_count; ++ip) {
        const double phi = 2.0 * units::pi * ip / azimuth_count;
        grid.angular_nodes.emplace_back(sn * std::cos(phi), sn * std::sin(phi),
                                        t);
        grid.angular_weights.push_back(polar.weights[it] * 2.0 * units::pi /
                                       azimuth_count);
      }
    }
  }
  // Exactness is limited by the azimuthal count; polar segments are
  // piecewise and only exact for the polynomials each segment resolves.
  grid.angular_order = std::min(2 * nodes_per_segment - 1, azimuth_count - 1);
}

namespace {

void check_angular_order(int angular_order, int l_basis_max) {
  if (angular_order < minimum_angular_order(l_basis_max))
    throw DomainError("angular order " + std::to_string(angular_order) +
                      " below 2*l_max+4 = " +
                      std::to_string(minimum_angular_order(l_basis_max)));
}

} // namespace

QuadratureGrid build_grid(double r_min, double r_max, int radial_count,
                          int angular_order, int l_basis_max) {
  if (r_min < 0.0 || !(r_max > r_min))
    throw DomainError("build_grid: need 0 <= r_min < r_max");
  if (radial_count < 16)
    throw DomainError("build_grid: need at least 16 radial nodes");
  const double breaks[] = {r_min, r_max};
  const int counts[] = {radial_count};
  return build_composite_grid(breaks, counts, angular_order, l_basis_max);
}

QuadratureGrid build_composite_grid(std::span<const double> breaks,
                                    std::span<const int> counts,
                                    int angular_order, int l_basis_max) {
  if (breaks.size() != counts.size() + 1 || counts.empty())
    throw DomainError("composite grid: need one count per radial segment");
  check_angular_order(angular_order, l_basis_max);
  QuadratureGrid grid;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    if (breaks[s] < 0.0 || !(breaks[s + 1] > breaks[s]))
      throw DomainError("composite grid: radial breakpoints must increase");
    const GaussRule rule = gauss_legendre(counts[s], breaks[s], breaks[s + 1]);
    for (int i = 0; i < counts[s]; ++i) {
      const double r = rule.nodes[i];
      grid.radial_nodes.push_back(r);
      grid.radial_weights.push_back(rule.weights[i] * r * r);
    }
  }
  grid.radial_count = static_cast<int>(grid.radial_nodes.size());
  build_angular_rule(angular_order, grid);
  return grid;
}

namespace {

template <typename T>
T integrate_impl(const QuadratureGrid &grid, std::span<const T> values) {
  const std::size_t n_ang = grid.angular_nodes.size();
  if (values.size() != grid.size())
    throw DomainError("integrate: sample count does not match grid");
  std::vector<T> shell(grid.radial_nodes.size());
  std::vector<T> terms(n_ang);
  for (std::size_t ir = 0; ir < grid.radial_nodes.size(); ++ir) {
    for (std::size_t ia = 0; ia < n_ang; ++ia)
      terms[ia] = grid.angular_weights[ia] * values[ir * n_ang + ia];
    shell[ir] = grid.radial_weights[ir] *
                pairwise_sum(std::span<const T>(terms.data(), terms.size()));
  }
  return pairwise_sum(std::span<const T>(shell.data(), shell.size()));
}

} // namespace

double integrate(const QuadratureGrid &grid, std::span<const double> values) {
  return integrate_impl(grid, values);
}

cplx integrate(const QuadratureGrid &grid, std::span<const cplx> values) {
  return integrate_impl(grid, values);
}

CVec3 central_difference_gradient(const ScalarField &f, const Vec3 &point,
                                  double h) {
  CVec3 g;
  for (int d = 0; d < 3; ++d) {
    Vec3 plus = point, minus = point;
    plus[d] += h;
    minus[d] -= h;
    g[d] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

} // namespace oamloop::numerics
