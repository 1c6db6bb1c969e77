#include "oamloop/dynamics.hpp"

#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace oamloop::dynamics {

double spectral_factor(double energy_j, double energy_k, double omega,
                       double delta) {
  if (!(delta > 0.0))
    throw DomainError("envelope parameter must be positive");
  const double d = energy_j - energy_k;
  const double rot = (d - omega) * (d - omega) / (4.0 * delta);
  const double counter = (d + omega) * (d + omega) / (4.0 * delta);
  return std::sqrt(std::numbers::pi / delta) *
         (std::exp(-rot) + std::exp(-counter));
}

ExcitationState excite(const structure::Basis &basis,
                       const coupling::TransitionSet &transitions,
                       double validity_threshold) {
  ExcitationState st;
  st.sources = transitions.sources;
  st.targets = transitions.targets;
  st.validity_threshold = validity_threshold;
  const auto &pulse = transitions.pulse;
  const std::size_t nj = st.targets.size(), nk = st.sources.size();
  st.source_energies.resize(nk);
  st.target_energies.resize(nj);
  for (std::size_t k = 0; k < nk; ++k)
    st.source_energies[k] = basis.orbitals[st.sources[k]].energy;
  for (std::size_t j = 0; j < nj; ++j)
    st.target_energies[j] = basis.orbitals[st.targets[j]].energy;

  const Eigen::MatrixXcd m = transitions.effective();
  st.spectral.resize(nj, nk);
  st.amplitudes.resize(nj, nk);
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t j = 0; j < nj; ++j) {
      const double g = spectral_factor(st.target_energies[j],
                                       st.source_energies[k], pulse.omega,
                                       pulse.delta);
      st.spectral(j, k) = g;
      st.amplitudes(j, k) = I * g * m(j, k);
    }
  for (std::size_t k = 0; k < nk; ++k)
    st.validity = std::max(st.validity, st.amplitudes.col(k).squaredNorm());
  if (!st.perturbative()) {
    std::ostringstream os;
    os << "perturbation breakdown: max excited population per source "
       << st.validity << " exceeds " << validity_threshold;
    st.warnings.push_back(os.str());
  }
  return st;
}

void write_population_table(std::ostream &out, const ExcitationState &state,
                            const coupling::TransitionSet &transitions) {
  out << "# k j e_k e_j |M| G |B|^2   (energies in hartree)\n";
  out << std::setprecision(12);
  for (std::size_t k = 0; k < state.sources.size(); ++k)
    for (std::size_t j = 0; j < state.targets.size(); ++j)
      out << state.sources[k] << ' ' << state.targets[j] << ' '
          << state.source_energies[k] << ' ' << state.target_energies[j]
          << ' ' << std::abs(transitions.raw(j, k)) << ' '
          << state.spectral(j, k) << ' '
          << std::norm(state.amplitudes(j, k)) << '\n';
}

} // namespace oamloop::dynamics
