#pragma once

// Self-check suite run by `oamloop check`, and the verification helpers it
// shares with the acceptance harness.

#include "oamloop/app/model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace oamloop::app {

struct CheckLine {
  enum class Status { pass, fail, skip };
  std::string name;
  Status status = Status::pass;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckLine> lines;
  bool passed() const;
};

CheckReport run_checks(const Model &model, int threads = 1);
void print_report(std::ostream &out, const CheckReport &report);

struct RingOracleResult {
  double moment = 0.0, moment_expected = 0.0;
  double field = 0.0, field_expected = 0.0;
  double moment_error = 0.0, field_error = 0.0; ///< relative
};

/// Thin synthetic loop (width 2% of the radius, unit current) integrated on
/// the loop-adapted grid, against I pi a^2 and mu0 I / (2 a).
RingOracleResult ring_oracle(double radius, double current = 1.0);

struct OracleComparison {
  double max_relative_error = 0.0;
  double max_population = 0.0;
  std::size_t compared = 0;
  double norm_drift = 0.0;
  long steps = 0;
  double omega = 0.0;
  double amplitude = 0.0;
};

/// Reduced basis (band 2 and band 3 up to l = 2) driven weakly at its
/// strongest resonance; populations from first-order amplitudes against
/// direct propagation. Populations below 1e-3 of the largest are skipped.
OracleComparison compare_with_oracle(const RunConfig &base, int charge,
                                     double rho_ratio,
                                     double target_population = 1e-4);

struct SelectionViolation {
  /// max forbidden |M| over the largest allowed |M|; when the charge leaves
  /// no allowed pair, max of |M| / int |psi_j| |H psi_k| instead
  double azimuthal = 0.0;
  double parity = 0.0;
  double max_abs = 0.0;
  double max_allowed = 0.0;
  bool any_allowed = false;
};

/// Centered beam, spherical-mode basis; uses raw (unpruned) elements.
SelectionViolation selection_violations(const Model &model, int charge,
                                        double omega);

/// Smallest nonzero gap between distinct levels of the given orbitals.
double min_level_spacing(const structure::Basis &basis,
                         const std::vector<std::size_t> &orbitals);

} // namespace oamloop::app
