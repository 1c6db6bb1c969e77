#include "oamloop/observables.hpp"

#include "oamloop/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace oamloop::observables {

Eigen::MatrixXcd interference_matrix(const dynamics::ExcitationState &state,
                                     double eta, int spin) {
  const Eigen::Index n = state.amplitudes.rows();
  Eigen::MatrixXcd d = static_cast<double>(spin) *
                       (state.amplitudes.conjugate() *
                        state.amplitudes.transpose());
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      if (!(std::abs(state.target_energies[a] - state.target_energies[b]) <
            eta))
        d(a, b) = 0.0;
  // Exact Hermiticity regardless of rounding in the product.
  return 0.5 * (d + d.adjoint());
}

CurrentEvaluator::CurrentEvaluator(const dynamics::ExcitationState &state,
                                   const structure::Basis &basis,
                                   const CurrentOptions &options)
    : basis_(&basis) {
  const Eigen::MatrixXcd full =
      interference_matrix(state, options.eta, options.spin);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index a = 0; a < full.rows(); ++a)
    if (full.row(a).cwiseAbs().maxCoeff() > 0.0) {
      keep.push_back(a);
      active_.push_back(state.targets[a]);
    }
  d_.resize(keep.size(), keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      d_(a, b) = full(keep[a], keep[b]);
}

Vec3 CurrentEvaluator::operator()(const Vec3 &point) const {
  if (active_.empty() || point.norm() < 1e-12)
    return Vec3::Zero();
  const std::size_t n = active_.size();
  Eigen::VectorXcd v(n);
  Eigen::MatrixXcd g(n, 3);
  for (std::size_t a = 0; a < n; ++a) {
    const auto &o = basis_->orbitals[active_[a]];
    v[a] = structure::evaluate_orbital(o, *basis_, point);
    g.row(a) = structure::evaluate_gradient(o, *basis_, point).transpose();
  }
  const Eigen::MatrixXcd dg = d_ * g; // rows l: sum_l' D_ll' grad psi_l'
  Vec3 j;
  for (int c = 0; c < 3; ++c)
    j[c] = (v.conjugate().transpose() * dg.col(c))(0, 0).imag();
  return j;
}

Vec3 dc_current_density(const dynamics::ExcitationState &state,
                        const structure::Basis &basis, const Vec3 &point,
                        const CurrentOptions &options) {
  return CurrentEvaluator(state, basis, options)(point);
}

double CurrentField::max_norm() const {
  double m = 0.0;
  for (const Vec3 &j : samples)
    m = std::max(m, j.norm());
  return m;
}

CurrentField current_field(const dynamics::ExcitationState &state,
                           const coupling::Workspace &ws,
                           const CurrentOptions &options) {
  CurrentField f;
  f.grid = ws.grid();
  f.convention = options.convention;
  const std::size_t n_r = f.grid.radial_nodes.size();
  const std::size_t n_ang = f.grid.angular_nodes.size();
  f.samples.assign(f.grid.size(), Vec3::Zero());

  const Eigen::MatrixXcd d =
      interference_matrix(state, options.eta, options.spin);
  if (d.cwiseAbs().maxCoeff() == 0.0)
    return f;
  const Eigen::MatrixXcd dt = d.transpose();

  Eigen::MatrixXcd v, g;
  double residue = 0.0;
  for (std::size_t ir = 0; ir < n_r; ++ir) {
    ws.shell_values(ir, state.targets, v);
    for (int c = 0; c < 3; ++c) {
      ws.shell_gradients(ir, c, state.targets, g);
      // X = sum D conj(psi_l) grad psi_l', Y = sum D psi_l' grad conj(psi_l)
      const Eigen::VectorXcd x =
          (v.conjugate().cwiseProduct(g * dt)).rowwise().sum();
      const Eigen::VectorXcd y =
          (v.cwiseProduct(g.conjugate() * d)).rowwise().sum();
      for (std::size_t ia = 0; ia < n_ang; ++ia) {
        const cplx jc = (x[ia] - y[ia]) / (2.0 * I);
        f.samples[ir * n_ang + ia][c] = jc.real();
        residue = std::max(residue, std::abs(jc.imag()));
      }
    }
  }
  const double mx = f.max_norm();
  f.imaginary_residue = mx > 0.0 ? residue / mx : 0.0;
  return f;
}

CurrentField synthetic_field(const numerics::QuadratureGrid &grid,
                             const std::function<Vec3(const Vec3 &)> &j,
                             ChargeConvention convention) {
  CurrentField f;
  f.grid = grid;
  f.convention = convention;
  const std::size_t n_ang = grid.angular_nodes.size();
  f.samples.resize(grid.size());
  for (std::size_t ir = 0; ir < grid.radial_nodes.size(); ++ir)
    for (std::size_t ia = 0; ia < n_ang; ++ia)
      f.samples[ir * n_ang + ia] = j(grid.point(ir, ia));
  return f;
}

CylindricalNorms cylindrical_decomposition(const CurrentField &field) {
  const auto &grid = field.grid;
  const std::size_t n_ang = grid.angular_nodes.size();
  std::vector<double> jr(grid.size()), jp(grid.size()), jz(grid.size());
  for (std::size_t ir = 0; ir < grid.radial_nodes.size(); ++ir)
    for (std::size_t ia = 0; ia < n_ang; ++ia) {
      const std::size_t i = ir * n_ang + ia;
      const Vec3 p = grid.point(ir, ia);
      const double rho = std::hypot(p.x(), p.y());
      const Vec3 &j = field.samples[i];
      double a = 0.0, b = 0.0;
      if (rho > 0.0) {
        a = (p.x() * j.x() + p.y() * j.y()) / rho;
        b = (-p.y() * j.x() + p.x() * j.y()) / rho;
      } else {
        a = std::hypot(j.x(), j.y());
      }
      jr[i] = a * a;
      jp[i] = b * b;
      jz[i] = j.z() * j.z();
    }
  CylindricalNorms n;
  n.rho = std::sqrt(numerics::integrate(grid, jr));
  n.phi = std::sqrt(numerics::integrate(grid, jp));
  n.z = std::sqrt(numerics::integrate(grid, jz));
  return n;
}

} // namespace oamloop::observables

namespace oamloop::observables {

std::function<Vec3(const Vec3 &)> ring_current(double a, double s,
                                                double current) {
  if (!(a > 0.0) || !(s > 0.0))
    throw DomainError("ring radius and width must be positive");
  return [a, s, current](const Vec3 &p) -> Vec3 {
    const double rho = std::hypot(p.x(), p.y());
    if (rho == 0.0)
      return Vec3::Zero();
    const double d2 = (rho - a) * (rho - a) + p.z() * p.z();
    const double g =
        current * std::exp(-d2 / (2.0 * s * s)) / (2.0 * std::numbers::pi * s * s);
    return Vec3(-p.y() / rho, p.x() / rho, 0.0) * g;
  };
}

numerics::QuadratureGrid ring_grid(double a, double s, double r_max,
                                   int azimuth_count) {
  const double w = 8.0 * s;
  if (a - w <= 0.0 || a + w >= r_max)
    throw DomainError("ring tube does not fit inside the grid");
  const double breaks[] = {0.0, a - w, a + w, r_max};
  const int counts[] = {16, 64, 16};
  numerics::QuadratureGrid g =
      numerics::build_composite_grid(breaks, counts, 4);
  const double c = std::min(0.5, w / (a - w));
  const double cos_breaks[] = {-c, c};
  numerics::build_composite_angular_rule(cos_breaks, 32, azimuth_count, g);
  return g;
}

} // namespace oamloop::observables
