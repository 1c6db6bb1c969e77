#include "oamloop/coupling.hpp"

#include "oamloop/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace oamloop::coupling {

using structure::Basis;
using structure::Orbital;

cplx apply_interaction(const beam::VortexPulse &pulse, const Orbital &orbital,
                       const Basis &basis, const Vec3 &point) {
  const beam::ModeSample a = beam::spatial_mode(pulse, point);
  const CVec3 grad = structure::evaluate_gradient(orbital, basis, point);
  const cplx psi = structure::evaluate_orbital(orbital, basis, point);
  const Vec3 &eps = pulse.polarization;
  const cplx eps_grad_psi = eps.cast<cplx>().dot(grad);
  const cplx div_a = eps.cast<cplx>().dot(a.gradient);
  return -I * a.value * eps_grad_psi - 0.5 * I * div_a * psi;
}

cplx apply_interaction_unexpanded(const beam::VortexPulse &pulse,
                                  const Orbital &orbital, const Basis &basis,
                                  const Vec3 &point, double h) {
  const Vec3 &eps = pulse.polarization;
  cplx div = 0.0;
  for (int c = 0; c < 3; ++c) {
    if (eps[c] == 0.0)
      continue;
    Vec3 step = Vec3::Zero();
    step[c] = h;
    auto field = [&](const Vec3 &p) {
      return beam::spatial_mode(pulse, p).value *
             structure::evaluate_orbital(orbital, basis, p);
    };
    // fourth-order stencil
    div += eps[c] *
           (8.0 * (field(point + step) - field(point - step)) -
            (field(point + 2.0 * step) - field(point - 2.0 * step))) /
           (12.0 * h);
  }
  const cplx a = beam::spatial_mode(pulse, point).value;
  const CVec3 grad = structure::evaluate_gradient(orbital, basis, point);
  return -0.5 * I * (div + a * eps.cast<cplx>().dot(grad));
}

// ---------------------------------------------------------------------------

Workspace::Workspace(const Basis &basis, numerics::QuadratureGrid grid,
                     const std::vector<std::size_t> &orbitals)
    : basis_(&basis), grid_(std::move(grid)) {
  for (double r : grid_.radial_nodes)
    if (!(r > 0.0))
      throw SingularPointError("workspace grid contains the origin");
  const std::size_t n_ang = grid_.angular_nodes.size();
  for (std::size_t idx : orbitals) {
    if (idx >= basis.orbitals.size())
      throw DomainError("orbital index out of range");
    if (slot_.count(idx))
      continue;
    const Orbital &o = basis.orbitals[idx];
    const std::size_t s = angular_value_.size();
    slot_[idx] = s;

    auto it = radial_slot_.find(o.radial_index);
    std::size_t rs;
    if (it == radial_slot_.end()) {
      rs = radial_value_.size();
      radial_slot_[o.radial_index] = rs;
      const auto &rf = basis.radials[o.radial_index];
      std::vector<double> v, d;
      v.reserve(grid_.radial_nodes.size());
      d.reserve(grid_.radial_nodes.size());
      for (double r : grid_.radial_nodes) {
        v.push_back(rf.value(r));
        d.push_back(rf.derivative(r));
      }
      radial_value_.push_back(std::move(v));
      radial_derivative_.push_back(std::move(d));
    } else {
      rs = it->second;
    }
    radial_of_slot_.push_back(rs);

    Eigen::VectorXcd y(n_ang);
    Eigen::MatrixXcd g(n_ang, 3);
    for (std::size_t ia = 0; ia < n_ang; ++ia) {
      const Vec3 &u = grid_.angular_nodes[ia];
      y[ia] = structure::angular_value(o, u);
      g.row(ia) = structure::angular_gradient(o, u).transpose();
    }
    angular_value_.push_back(std::move(y));
    angular_gradient_.push_back(std::move(g));
  }
}

std::size_t Workspace::slot(std::size_t orbital) const {
  auto it = slot_.find(orbital);
  if (it == slot_.end())
    throw DomainError("orbital not tabulated in workspace");
  return it->second;
}

cplx Workspace::value(std::size_t orbital, std::size_t ir,
                      std::size_t ia) const {
  const std::size_t s = slot(orbital);
  return radial_value_[radial_of_slot_[s]][ir] * angular_value_[s][ia];
}

CVec3 Workspace::gradient(std::size_t orbital, std::size_t ir,
                          std::size_t ia) const {
  const std::size_t s = slot(orbital);
  const std::size_t rs = radial_of_slot_[s];
  const double r = grid_.radial_nodes[ir];
  const Vec3 &n = grid_.angular_nodes[ia];
  return radial_derivative_[rs][ir] * angular_value_[s][ia] *
             n.cast<cplx>() +
         (radial_value_[rs][ir] / r) *
             angular_gradient_[s].row(ia).transpose();
}

void Workspace::shell_values(std::size_t ir,
                             const std::vector<std::size_t> &orbitals,
                             Eigen::MatrixXcd &values) const {
  const std::size_t n_ang = grid_.angular_nodes.size();
  values.resize(n_ang, orbitals.size());
  for (std::size_t c = 0; c < orbitals.size(); ++c) {
    const std::size_t s = slot(orbitals[c]);
    values.col(c) = radial_value_[radial_of_slot_[s]][ir] * angular_value_[s];
  }
}

void Workspace::shell_gradients(std::size_t ir, int component,
                                const std::vector<std::size_t> &orbitals,
                                Eigen::MatrixXcd &grads) const {
  const std::size_t n_ang = grid_.angular_nodes.size();
  grads.resize(n_ang, orbitals.size());
  const double r = grid_.radial_nodes[ir];
  for (std::size_t c = 0; c < orbitals.size(); ++c) {
    const std::size_t s = slot(orbitals[c]);
    const std::size_t rs = radial_of_slot_[s];
    const double rv = radial_value_[rs][ir] / r;
    const double rd = radial_derivative_[rs][ir];
    for (std::size_t ia = 0; ia < n_ang; ++ia)
      grads(ia, c) = rd * angular_value_[s][ia] *
                         grid_.angular_nodes[ia][component] +
                     rv * angular_gradient_[s](ia, component);
  }
}

// ---------------------------------------------------------------------------

cplx matrix_element(const Basis &basis, std::size_t bra, std::size_t ket,
                    const beam::VortexPulse &pulse,
                    const numerics::QuadratureGrid &grid) {
  const Orbital &ob = basis.orbitals.at(bra);
  const Orbital &ok = basis.orbitals.at(ket);
  const std::size_t n_ang = grid.angular_nodes.size();
  std::vector<cplx> samples(grid.size());
  for (std::size_t ir = 0; ir < grid.radial_nodes.size(); ++ir)
    for (std::size_t ia = 0; ia < n_ang; ++ia) {
      const Vec3 p = grid.point(ir, ia);
      samples[ir * n_ang + ia] =
          std::conj(structure::evaluate_orbital(ob, basis, p)) *
          apply_interaction(pulse, ok, basis, p);
    }
  return numerics::integrate(grid, samples);
}

CouplingResult coupling_matrix(const Workspace &ws,
                               const std::vector<std::size_t> &bras,
                               const std::vector<std::size_t> &kets,
                               const beam::VortexPulse &pulse) {
  beam::validate(pulse);
  const auto &grid = ws.grid();
  const std::size_t n_r = grid.radial_nodes.size();
  const std::size_t n_ang = grid.angular_nodes.size();
  const std::size_t nb = bras.size(), nk = kets.size();

  std::vector<Eigen::MatrixXcd> shell_value(n_r);
  std::vector<Eigen::MatrixXd> shell_abs(n_r);

  Eigen::MatrixXcd vb, vk, gk, h(n_ang, nk);
  Eigen::VectorXcd mode(n_ang), eps_grad_mode(n_ang);
  Eigen::VectorXd w(n_ang);
  for (std::size_t ia = 0; ia < n_ang; ++ia)
    w[ia] = grid.angular_weights[ia];
  const Vec3 &eps = pulse.polarization;

  for (std::size_t ir = 0; ir < n_r; ++ir) {
    for (std::size_t ia = 0; ia < n_ang; ++ia) {
      const beam::ModeSample s = beam::spatial_mode(pulse, grid.point(ir, ia));
      mode[ia] = s.value;
      eps_grad_mode[ia] = eps.cast<cplx>().dot(s.gradient);
    }
    ws.shell_values(ir, bras, vb);
    ws.shell_values(ir, kets, vk);
    // h = -i a (eps . grad psi) - (i/2)(eps . grad a) psi
    h = (-0.5 * I * eps_grad_mode).asDiagonal() * vk;
    for (int c = 0; c < 3; ++c) {
      if (eps[c] == 0.0)
        continue;
      ws.shell_gradients(ir, c, kets, gk);
      h += (-I * eps[c] * mode).asDiagonal() * gk;
    }
    const double wr = grid.radial_weights[ir];
    shell_value[ir] = wr * (vb.adjoint() * w.asDiagonal() * h);
    shell_abs[ir] =
        wr * (vb.cwiseAbs().transpose() * w.asDiagonal() * h.cwiseAbs());
  }

  CouplingResult out;
  out.value.resize(nb, nk);
  out.absolute.resize(nb, nk);
  std::vector<cplx> vs(n_r);
  std::vector<double> as(n_r);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nk; ++j) {
      for (std::size_t ir = 0; ir < n_r; ++ir) {
        vs[ir] = shell_value[ir](i, j);
        as[ir] = shell_abs[ir](i, j);
      }
      out.value(i, j) = numerics::pairwise_sum(std::span<const cplx>(vs));
      out.absolute(i, j) = numerics::pairwise_sum(std::span<const double>(as));
    }
  return out;
}

// ---------------------------------------------------------------------------

bool TransitionSet::is_pruned(std::size_t row, std::size_t col) const {
  return std::find(pruned.begin(), pruned.end(), std::make_pair(row, col)) !=
         pruned.end();
}

Eigen::MatrixXcd TransitionSet::effective() const {
  Eigen::MatrixXcd m = raw;
  for (auto [r, c] : pruned)
    m(r, c) = 0.0;
  return m;
}

namespace {

numerics::QuadratureGrid refine(const numerics::QuadratureGrid &g) {
  // Radial nodes sit strictly inside their interval; extend by one spacing
  // to recover the outer edge.
  const std::size_t n = g.radial_nodes.size();
  const double hi =
      g.radial_nodes[n - 1] + (g.radial_nodes[n - 1] - g.radial_nodes[n - 2]);
  return numerics::build_grid(0.0, hi, 2 * g.radial_count,
                              2 * g.angular_order);
}

} // namespace

TransitionSet build_transition_set(const Basis &basis,
                                   const beam::VortexPulse &pulse,
                                   const Workspace &ws,
                                   const TransitionOptions &options) {
  TransitionSet set;
  set.sources = basis.occupied_in(options.source_band);
  set.targets = basis.unoccupied_in(options.target_band);
  set.pulse = pulse;
  set.radial_count = ws.grid().radial_count;
  set.angular_order = ws.grid().angular_order;
  if (set.sources.empty())
    set.warnings.push_back("no occupied orbitals in source band");
  if (set.targets.empty())
    set.warnings.push_back("no unoccupied orbitals in target band");

  int l_needed = 0;
  for (auto i : set.sources)
    l_needed = std::max(l_needed, basis.orbitals[i].l);
  for (auto i : set.targets)
    l_needed = std::max(l_needed, basis.orbitals[i].l);
  if (ws.grid().angular_order < numerics::minimum_angular_order(l_needed))
    throw DomainError("angular order below 2*l_max + 4");
  const int charge_band = std::abs(pulse.charge) + 2 * l_needed + 1;
  if (ws.grid().angular_order < charge_band && pulse.offset == 0.0)
    set.warnings.push_back(
        "angular order may not resolve the beam's azimuthal phase");

  CouplingResult c = coupling_matrix(ws, set.targets, set.sources, pulse);
  set.raw = std::move(c.value);
  set.significance.resize(set.raw.rows(), set.raw.cols());
  set.max_abs = set.raw.size() ? set.raw.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index r = 0; r < set.raw.rows(); ++r)
    for (Eigen::Index k = 0; k < set.raw.cols(); ++k) {
      const double mag = std::abs(set.raw(r, k));
      const double denom = c.absolute(r, k);
      set.significance(r, k) = denom > 0.0 ? mag / denom : 0.0;
      if (mag < options.prune_threshold * set.max_abs ||
          set.significance(r, k) < options.cancellation_threshold)
        set.pruned.emplace_back(r, k);
    }

  if (options.convergence_check && set.raw.size() > 0) {
    Workspace fine(basis, refine(ws.grid()), [&] {
      std::vector<std::size_t> all = set.sources;
      all.insert(all.end(), set.targets.begin(), set.targets.end());
      return all;
    }());
    const Eigen::MatrixXcd m2 =
        coupling_matrix(fine, set.targets, set.sources, pulse).value;
    const double scale = set.max_abs > 0.0 ? set.max_abs : 1.0;
    set.convergence = (m2 - set.raw).cwiseAbs() / scale;
    if (set.convergence.maxCoeff() > options.convergence_tolerance)
      set.warnings.push_back("matrix elements not converged under grid "
                             "refinement");
  }
  return set;
}

TransitionSet rescale(const TransitionSet &set, double new_amplitude) {
  if (set.pulse.amplitude == 0.0)
    throw DomainError("cannot rescale a zero-amplitude transition set");
  TransitionSet out = set;
  const double f = new_amplitude / set.pulse.amplitude;
  out.raw *= f;
  out.max_abs *= std::abs(f);
  out.pulse.amplitude = new_amplitude;
  return out;
}

int dominant_m(const Orbital &orbital) {
  int best = 0;
  double mag = -1.0;
  for (int m = -orbital.l; m <= orbital.l; ++m) {
    const double a = std::abs(orbital.coefficient(m));
    if (a > mag + 1e-12) {
      mag = a;
      best = m;
    }
  }
  return best;
}

void write_transition_table(std::ostream &out, const TransitionSet &set,
                            const Basis &basis) {
  out << "# k j l_k m_k l_j m_j re im\n";
  out << std::setprecision(12);
  for (std::size_t c = 0; c < set.sources.size(); ++c)
    for (std::size_t r = 0; r < set.targets.size(); ++r) {
      const Orbital &ok = basis.orbitals[set.sources[c]];
      const Orbital &oj = basis.orbitals[set.targets[r]];
      out << set.sources[c] << ' ' << set.targets[r] << ' ' << ok.l << ' '
          << dominant_m(ok) << ' ' << oj.l << ' ' << dominant_m(oj) << ' '
          << set.raw(r, c).real() << ' ' << set.raw(r, c).imag() << '\n';
    }
}

} // namespace oamloop::coupling
