#pragma once

#include "oamloop/app/config.hpp"
#include "oamloop/coupling.hpp"
#include "oamloop/dynamics.hpp"
#include "oamloop/observables.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace oamloop::app {

/// Basis plus the orbital tables on the run's quadrature grid. Immutable and
/// shared read-only by scan workers.
struct Model {
  RunConfig config;
  structure::Basis basis;
  std::shared_ptr<const coupling::Workspace> workspace;
  std::vector<std::size_t> sources; ///< occupied band-2 orbitals
  std::vector<std::size_t> targets; ///< unoccupied band-3 orbitals
};

/// Composite grid [0, r_cut] + [r_cut, r_max] so the Biot-Savart exclusion
/// ball is integrated exactly away.
numerics::QuadratureGrid make_grid(const RunConfig &config, int l_basis_max);

Model build_model(const RunConfig &config);

beam::VortexPulse make_pulse(const RunConfig &config, int charge,
                             double offset_bohr, double omega);

struct PointState {
  coupling::TransitionSet transitions;
  dynamics::ExcitationState excitation;
  observables::CurrentField field;
};

PointState solve_point(const Model &model, const beam::VortexPulse &pulse);

struct PointResult {
  double omega_eV = 0.0;
  int charge = 0;
  std::optional<double> rho_ratio;
  double rho0_nm = 0.0;
  double intensity = 0.0;
  double amplitude_au = 0.0;
  observables::MagneticsResult magnetics;
  observables::CylindricalNorms norms;
  double validity = 0.0;
  bool perturbative = true;
  std::size_t pruned = 0;
  std::string dominant; ///< strongest excitations, "2h-2>3f-1:0.012;..."
  std::vector<std::string> warnings;
};

PointResult evaluate_point(const Model &model, int charge,
                           std::optional<double> rho_ratio, double omega);

/// Distinct positive source->target transition energies inside
/// [lo_eV, hi_eV], ascending, in hartree.
std::vector<double> transition_energies(const Model &model, double lo_eV,
                                        double hi_eV);

/// Transition energy in the configured window that maximizes
/// sum over offsets of |m_z|. Offsets are rho0/rho_max ratios.
double resonant_omega(const Model &model, int charge,
                      const std::vector<std::optional<double>> &ratios,
                      int threads = 1);

/// Label such as "3d+1" for an orbital (dominant m).
std::string orbital_label(const structure::Orbital &orbital);

} // namespace oamloop::app
