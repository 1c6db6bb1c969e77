#include "oamloop/observables.hpp"

#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"

#include <cmath>
#include <sstream>

namespace oamloop::observables {

namespace {

Vec3 integrate_vector(const numerics::QuadratureGrid &grid,
                      const std::vector<Vec3> &v) {
  std::vector<double> c(v.size());
  Vec3 out;
  for (int k = 0; k < 3; ++k) {
    for (std::size_t i = 0; i < v.size(); ++i)
      c[i] = v[i][k];
    out[k] = numerics::integrate(grid, c);
  }
  return out;
}

} // namespace

MagneticsResult magnetic_moment(const CurrentField &field) {
  const auto &grid = field.grid;
  const std::size_t n_ang = grid.angular_nodes.size();
  std::vector<Vec3> rxj(grid.size());
  for (std::size_t ir = 0; ir < grid.radial_nodes.size(); ++ir)
    for (std::size_t ia = 0; ia < n_ang; ++ia) {
      const std::size_t i = ir * n_ang + ia;
      rxj[i] = grid.point(ir, ia).cross(field.samples[i]);
    }
  MagneticsResult r;
  r.moment_au = 0.5 * field.charge_factor() * integrate_vector(grid, rxj);
  r.moment_z_muB = units::muB_from_au(r.moment_au.z());
  const double perp = std::hypot(r.moment_au.x(), r.moment_au.y());
  r.transverse_ratio = r.moment_au.z() != 0.0
                           ? perp / std::abs(r.moment_au.z())
                           : (perp > 0.0 ? INFINITY : 0.0);
  return r;
}

MagneticsResult b_field_center(const CurrentField &field, double r_cut) {
  if (!(r_cut > 0.0))
    throw DomainError("exclusion radius must be positive");
  const auto &grid = field.grid;
  const std::size_t n_ang = grid.angular_nodes.size();
  std::vector<Vec3> integrand(grid.size(), Vec3::Zero());
  double boundary = 0.0;
  double r_boundary = INFINITY;
  for (std::size_t ir = 0; ir < grid.radial_nodes.size(); ++ir) {
    const double r = grid.radial_nodes[ir];
    if (r < r_cut)
      continue;
    if (r < r_boundary)
      r_boundary = r;
    for (std::size_t ia = 0; ia < n_ang; ++ia) {
      const std::size_t i = ir * n_ang + ia;
      integrand[i] =
          grid.point(ir, ia).cross(field.samples[i]) / (r * r * r);
    }
  }
  MagneticsResult res;
  res.b_center_au = units::vacuum_permeability_au / (4.0 * units::pi) *
                    field.charge_factor() * integrate_vector(grid, integrand);
  res.b_center_z_T = units::tesla_from_au(res.b_center_au.z());

  for (std::size_t ir = 0; ir < grid.radial_nodes.size(); ++ir)
    if (grid.radial_nodes[ir] == r_boundary)
      for (std::size_t ia = 0; ia < n_ang; ++ia)
        boundary = std::max(boundary, field.samples[ir * n_ang + ia].norm());
  const double mx = field.max_norm();
  res.boundary_ratio = mx > 0.0 ? boundary / mx : 0.0;
  if (res.boundary_ratio > 1e-8) {
    std::ostringstream os;
    os << "current at the exclusion boundary r=" << r_boundary
       << " is " << res.boundary_ratio << " of its maximum";
    res.warnings.push_back(os.str());
  }
  return res;
}

MagneticsResult magnetics(const CurrentField &field, double r_cut) {
  MagneticsResult res = b_field_center(field, r_cut);
  const MagneticsResult m = magnetic_moment(field);
  res.moment_au = m.moment_au;
  res.moment_z_muB = m.moment_z_muB;
  res.transverse_ratio = m.transverse_ratio;

  const auto &grid = field.grid;
  const std::size_t n_ang = grid.angular_nodes.size();
  std::vector<double> jphi(grid.size(), 0.0);
  for (std::size_t ir = 0; ir < grid.radial_nodes.size(); ++ir)
    for (std::size_t ia = 0; ia < n_ang; ++ia) {
      const Vec3 p = grid.point(ir, ia);
      const double rho2 = p.x() * p.x() + p.y() * p.y();
      if (rho2 == 0.0)
        continue;
      const Vec3 &j = field.samples[ir * n_ang + ia];
      // J_phi / (2 pi rho) = (x j_y - y j_x) / (2 pi rho^2)
      jphi[ir * n_ang + ia] =
          (p.x() * j.y() - p.y() * j.x()) / (2.0 * units::pi * rho2);
    }
  res.loop_current_au = field.charge_factor() * numerics::integrate(grid, jphi);
  if (res.loop_current_au != 0.0)
    res.effective_radius = std::sqrt(std::abs(res.moment_au.z()) /
                                     (units::pi * std::abs(res.loop_current_au)));
  return res;
}

double radial_flux(const CurrentEvaluator &current, double radius,
                   int order) {
  numerics::QuadratureGrid g;
  numerics::build_angular_rule(order, g);
  std::vector<double> f(g.angular_nodes.size());
  for (std::size_t ia = 0; ia < g.angular_nodes.size(); ++ia) {
    const Vec3 &n = g.angular_nodes[ia];
    f[ia] = g.angular_weights[ia] * current(radius * n).dot(n);
  }
  return radius * radius * numerics::pairwise_sum(std::span<const double>(f));
}

} // namespace oamloop::observables
