#include "oamloop/app/model.hpp"

#include "oamloop/app/scan.hpp"
#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace oamloop::app {

numerics::QuadratureGrid make_grid(const RunConfig &config, int l_basis_max) {
  const double breaks[] = {0.0, config.r_cut, config.effective_r_max()};
  const int counts[] = {config.inner_nodes, config.radial_nodes};
  return numerics::build_composite_grid(breaks, counts, config.angular_order,
                                        l_basis_max);
}

Model build_model(const RunConfig &config) {
  Model m;
  m.config = config;
  structure::ModelConfig mc = config.model;
  if (!config.symmetry_table.empty()) {
    try {
      mc.symmetry = structure::load_symmetry_coefficients(config.symmetry_table);
    } catch (const ParseError &e) {
      throw ConfigError("symmetry table " + config.symmetry_table + ": " +
                        e.what());
    } catch (const NormalizationError &e) {
      throw ConfigError("symmetry table " + config.symmetry_table + ": " +
                        e.what());
    }
  }
  m.basis = structure::build_basis(mc);
  bool has2 = false, has3 = false;
  for (const auto &b : m.basis.bands) {
    has2 |= b.n == 2;
    has3 |= b.n == 3;
  }
  if (!has2 || !has3)
    throw ConfigError("model needs bands 2 and 3");
  m.sources = m.basis.occupied_in(2);
  m.targets = m.basis.unoccupied_in(3);
  std::vector<std::size_t> all = m.sources;
  all.insert(all.end(), m.targets.begin(), m.targets.end());
  m.workspace = std::make_shared<const coupling::Workspace>(
      m.basis, make_grid(config, m.basis.max_l()), all);
  return m;
}

beam::VortexPulse make_pulse(const RunConfig &config, int charge,
                             double offset_bohr, double omega) {
  beam::VortexPulse p;
  p.charge = charge;
  p.radial_index = config.radial_index;
  p.waist = units::nm_to_bohr(config.waist_nm);
  p.omega = omega;
  p.delta = config.delta();
  p.amplitude = config.amplitude(omega);
  p.offset = offset_bohr;
  p.offset_angle = config.offset_angle;
  p.normalization = config.normalization;
  try {
    beam::validate(p);
  } catch (const DomainError &e) {
    throw ConfigError(std::string("pulse: ") + e.what());
  }
  return p;
}

PointState solve_point(const Model &model, const beam::VortexPulse &pulse) {
  const RunConfig &c = model.config;
  coupling::TransitionOptions opt;
  opt.prune_threshold = c.prune_threshold;
  opt.cancellation_threshold = c.cancellation_threshold;
  opt.convergence_check = c.convergence_check;
  PointState s;
  s.transitions =
      coupling::build_transition_set(model.basis, pulse, *model.workspace, opt);
  s.excitation =
      dynamics::excite(model.basis, s.transitions, c.validity_threshold);
  observables::CurrentOptions co;
  co.eta = c.eta;
  co.convention = c.convention;
  s.field = observables::current_field(s.excitation, *model.workspace, co);
  return s;
}

std::string orbital_label(const structure::Orbital &o) {
  static const char *letters = "spdfghiklmnoqrtuv";
  std::ostringstream os;
  const int m = coupling::dominant_m(o);
  os << o.n << (o.l < 17 ? letters[o.l] : 'x') << (m >= 0 ? "+" : "") << m;
  if (o.rep.size() > 1 || (o.rep.size() == 1 && o.rep[0] != letters[o.l]))
    os << '[' << o.rep << o.lambda << ']';
  return os.str();
}

PointResult evaluate_point(const Model &model, int charge,
                           std::optional<double> rho_ratio, double omega) {
  const RunConfig &c = model.config;
  const double offset = c.offset_for(charge, rho_ratio);
  const beam::VortexPulse pulse = make_pulse(c, charge, offset, omega);
  PointState s = solve_point(model, pulse);

  PointResult r;
  r.omega_eV = units::hartree_to_ev(omega);
  r.charge = charge;
  r.rho_ratio = rho_ratio ? rho_ratio : (c.rho0_nm ? std::nullopt
                                                   : std::optional<double>(
                                                         c.rho_ratio.value_or(0.0)));
  r.rho0_nm = units::bohr_to_nm(offset);
  r.intensity = c.intensity(omega);
  r.amplitude_au = pulse.amplitude;
  r.magnetics = observables::magnetics(s.field, c.r_cut);
  r.norms = observables::cylindrical_decomposition(s.field);
  r.validity = s.excitation.validity;
  r.perturbative = s.excitation.perturbative();
  r.pruned = s.transitions.pruned.size();
  r.warnings = s.transitions.warnings;
  r.warnings.insert(r.warnings.end(), s.excitation.warnings.begin(),
                    s.excitation.warnings.end());
  r.warnings.insert(r.warnings.end(), r.magnetics.warnings.begin(),
                    r.magnetics.warnings.end());

  // Three strongest populations.
  const Eigen::MatrixXd pop = s.excitation.populations();
  std::vector<std::pair<double, std::pair<Eigen::Index, Eigen::Index>>> all;
  for (Eigen::Index j = 0; j < pop.rows(); ++j)
    for (Eigen::Index k = 0; k < pop.cols(); ++k)
      if (pop(j, k) > 0.0)
        all.push_back({pop(j, k), {j, k}});
  std::stable_sort(all.begin(), all.end(), [](const auto &a, const auto &b) {
    return a.first > b.first;
  });
  std::ostringstream os;
  os << std::setprecision(4);
  for (std::size_t i = 0; i < std::min<std::size_t>(3, all.size()); ++i) {
    const auto [j, k] = all[i].second;
    if (i)
      os << ';';
    os << orbital_label(model.basis.orbitals[s.excitation.sources[k]]) << '>'
       << orbital_label(model.basis.orbitals[s.excitation.targets[j]]) << ':'
       << all[i].first;
  }
  r.dominant = os.str();
  return r;
}

std::vector<double> transition_energies(const Model &model, double lo_eV,
                                        double hi_eV) {
  std::vector<double> gaps;
  for (std::size_t k : model.sources)
    for (std::size_t j : model.targets) {
      const double g =
          model.basis.orbitals[j].energy - model.basis.orbitals[k].energy;
      const double ev = units::hartree_to_ev(g);
      if (ev >= lo_eV && ev <= hi_eV)
        gaps.push_back(g);
    }
  std::sort(gaps.begin(), gaps.end());
  std::vector<double> out;
  for (double g : gaps)
    if (out.empty() || g - out.back() > 1e-9)
      out.push_back(g);
  return out;
}

double resonant_omega(const Model &model, int charge,
                      const std::vector<std::optional<double>> &ratios,
                      int threads) {
  const RunConfig &c = model.config;
  const auto gaps =
      transition_energies(model, c.resonance_min_eV, c.resonance_max_eV);
  if (gaps.empty())
    throw ConfigError("no band-2 to band-3 transition inside the resonance "
                      "window");
  const std::size_t nr = ratios.size();
  const auto values = parallel_map(gaps.size() * nr, threads, [&](std::size_t i) {
    const PointResult p =
        evaluate_point(model, charge, ratios[i % nr], gaps[i / nr]);
    return std::abs(p.magnetics.moment_au.z());
  });
  std::size_t best = 0;
  double best_sum = -1.0;
  for (std::size_t g = 0; g < gaps.size(); ++g) {
    double sum = 0.0;
    for (std::size_t r = 0; r < nr; ++r)
      sum += values[g * nr + r];
    if (sum > best_sum) {
      best_sum = sum;
      best = g;
    }
  }
  return gaps[best];
}

} // namespace oamloop::app
