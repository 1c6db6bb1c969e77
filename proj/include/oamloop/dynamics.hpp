#pragma once

// First-order amplitudes after a Gaussian-envelope pulse, and a direct
// interaction-picture propagator used to validate them.

#include "oamloop/coupling.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace oamloop::dynamics {

/// sqrt(pi/delta) [exp(-(D - w)^2 / 4 delta) + exp(-(D + w)^2 / 4 delta)],
/// D = e_j - e_k. The second term is the counter-rotating part of the real
/// field.
double spectral_factor(double energy_j, double energy_k, double omega,
                       double delta);

struct ExcitationState {
  std::vector<std::size_t> sources; ///< columns
  std::vector<std::size_t> targets; ///< rows
  Eigen::MatrixXcd amplitudes;      ///< B_{jk} = i G M_{jk}
  Eigen::MatrixXd spectral;         ///< G_{jk}
  Eigen::VectorXd source_energies, target_energies;
  /// max over sources of sum_j |B_jk|^2
  double validity = 0.0;
  double validity_threshold = 0.05;
  std::vector<std::string> warnings;

  Eigen::MatrixXd populations() const { return amplitudes.cwiseAbs2(); }
  bool perturbative() const { return validity <= validity_threshold; }
};

ExcitationState excite(const structure::Basis &basis,
                       const coupling::TransitionSet &transitions,
                       double validity_threshold = 0.05);

/// Text table "k j e_k e_j |M| G |B|^2".
void write_population_table(std::ostream &out, const ExcitationState &state,
                            const coupling::TransitionSet &transitions);

struct OracleOptions {
  double dt = 0.0;           ///< 0: 0.02 * 2 pi / omega, capped to resolve gaps
  double span = 6.0;         ///< integrate over |t| <= span / sqrt(delta)
  double norm_tolerance = 1e-8;
};

struct OracleResult {
  /// Final interaction-picture coefficients; column k starts in states[k].
  Eigen::MatrixXcd coefficients;
  std::vector<std::size_t> states;
  double max_norm_drift = 0.0;
  long steps = 0;
  double dt = 0.0;
};

/// Integrates i dc/dt = V_I(t) c over the truncated state space `states`
/// with the full real field V(t) = e^{-delta t^2}(H e^{-i w t} + H^+ e^{i w t}).
/// Each entry of `sources` is propagated separately. Throws NumericalError
/// when the norm drifts by more than the tolerance.
OracleResult propagate_oracle(const structure::Basis &basis,
                              const coupling::Workspace &ws,
                              const std::vector<std::size_t> &states,
                              const std::vector<std::size_t> &sources,
                              const beam::VortexPulse &pulse,
                              const OracleOptions &options = {});

} // namespace oamloop::dynamics
