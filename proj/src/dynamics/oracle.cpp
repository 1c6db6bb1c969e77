#include "oamloop/dynamics.hpp"

#include "oamloop/error.hpp"

#include <cmath>
#include <numbers>

namespace oamloop::dynamics {

OracleResult propagate_oracle(const structure::Basis &basis,
                              const coupling::Workspace &ws,
                              const std::vector<std::size_t> &states,
                              const std::vector<std::size_t> &sources,
                              const beam::VortexPulse &pulse,
                              const OracleOptions &options) {
  beam::validate(pulse);
  const std::size_t n = states.size();
  if (n == 0)
    throw DomainError("empty state space");

  // <a|H|b> for the positive-frequency spatial operator.
  const Eigen::MatrixXcd h =
      coupling::coupling_matrix(ws, states, states, pulse).value;
  const Eigen::MatrixXcd hdag = h.adjoint();
  Eigen::VectorXd e(n);
  for (std::size_t a = 0; a < n; ++a)
    e[a] = basis.orbitals[states[a]].energy;

  double max_freq = pulse.omega;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      max_freq = std::max(max_freq, std::abs(e[a] - e[b]) + pulse.omega);
  double dt = options.dt;
  if (dt <= 0.0)
    dt = 0.02 * 2.0 * std::numbers::pi / max_freq;
  const double t_end = options.span / std::sqrt(pulse.delta);
  const long steps = static_cast<long>(std::ceil(2.0 * t_end / dt));
  dt = 2.0 * t_end / static_cast<double>(steps);

  // V_I(t)_{ab} = env(t) [H_ab e^{-iwt} + H+_ab e^{iwt}] e^{i(e_a - e_b)t}
  Eigen::MatrixXcd v(n, n);
  auto build = [&](double t) {
    const double env = std::exp(-pulse.delta * t * t);
    const cplx up = std::polar(env, -pulse.omega * t);
    const cplx down = std::conj(up);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        v(a, b) = (h(a, b) * up + hdag(a, b) * down) *
                  std::polar(1.0, (e[a] - e[b]) * t);
  };

  OracleResult res;
  res.states = states;
  res.steps = steps;
  res.dt = dt;
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, sources.size());
  for (std::size_t s = 0; s < sources.size(); ++s) {
    bool found = false;
    for (std::size_t a = 0; a < n; ++a)
      if (states[a] == sources[s]) {
        c(a, s) = 1.0;
        found = true;
      }
    if (!found)
      throw DomainError("source orbital outside the propagated state space");
  }

  Eigen::MatrixXcd k1, k2, k3, k4;
  for (long i = 0; i < steps; ++i) {
    const double t = -t_end + static_cast<double>(i) * dt;
    build(t);
    k1 = -I * (v * c);
    build(t + 0.5 * dt);
    k2 = -I * (v * (c + 0.5 * dt * k1));
    k3 = -I * (v * (c + 0.5 * dt * k2));
    build(t + dt);
    k4 = -I * (v * (c + dt * k3));
    c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    for (Eigen::Index s = 0; s < c.cols(); ++s) {
      const double drift = std::abs(c.col(s).squaredNorm() - 1.0);
      res.max_norm_drift = std::max(res.max_norm_drift, drift);
    }
    if (res.max_norm_drift > options.norm_tolerance)
      throw NumericalError("oracle norm drift " +
                           std::to_string(res.max_norm_drift) +
                           " exceeds tolerance; reduce the time step");
  }
  res.coefficients = std::move(c);
  return res;
}

} // namespace oamloop::dynamics
