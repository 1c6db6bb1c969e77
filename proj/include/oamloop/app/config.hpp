#pragma once

// Run configuration: a YAML document with model, bands, pulse, scan,
// numerics and output blocks, plus "block.key=value" command-line overrides
// (nested keys joined by dots, e.g. bands.3.width=4.5).

#include "oamloop/beam.hpp"
#include "oamloop/observables.hpp"
#include "oamloop/structure.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oamloop::app {

struct RunConfig {
  structure::ModelConfig model;
  std::string symmetry_table; ///< empty: spherical mode

  // pulse; unset optionals fall back to the documented defaults
  std::optional<double> intensity_w_cm2;
  std::optional<double> amplitude_au;
  std::optional<double> fwhm_fs;
  std::optional<double> delta_au;
  std::optional<double> omega_eV; ///< nullopt: pick the strongest resonance
  int charge = 1;
  int radial_index = 0;
  double waist_nm = 50.0;
  std::optional<double> rho_ratio; ///< rho0 / rho_max
  std::optional<double> rho0_nm;
  double offset_angle = 0.0;
  beam::Normalization normalization = beam::Normalization::peak;

  // scan axes (empty: command default)
  std::vector<double> scan_omega_eV;
  std::vector<double> scan_rho_ratio;
  std::vector<int> scan_charge;

  // numerics
  double r_max = 0.0; ///< 0: four times the outermost shell radius
  double r_cut = 0.5;
  int radial_nodes = 128;
  int inner_nodes = 16;
  int angular_order = 40;
  double eta = 1e-6;
  double validity_threshold = 0.05;
  double prune_threshold = 1e-14;
  double cancellation_threshold = 1e-13;
  bool convergence_check = false;
  double resonance_min_eV = 5.0;
  double resonance_max_eV = 18.0;

  // output
  observables::ChargeConvention convention =
      observables::ChargeConvention::electron;
  double plane_extent = 20.0; ///< bohr
  int plane_resolution = 64;
  bool long_format = true;
  bool dump_transitions = false;
  bool dump_populations = false;

  /// Fully resolved configuration as YAML (defaults filled in); parsing it
  /// back gives the same run.
  std::string canonical;
  std::uint64_t hash = 0;

  double effective_r_max() const;
  double delta() const;
  /// A0 for a given carrier (hartree), from intensity or given directly.
  double amplitude(double omega) const;
  /// Intensity for reporting.
  double intensity(double omega) const;
  /// rho0 in bohr for a charge; ratio mode needs charge != 0 unless ratio 0.
  double offset_for(int charge, std::optional<double> ratio_override = {}) const;
  std::string hash_hex() const;
};

/// Throws ParseError (with the line) for malformed documents and bad values
/// from the file, ConfigError for bad overrides or inconsistent settings.
RunConfig parse_config(std::istream &in,
                       const std::vector<std::string> &overrides = {});

/// Empty path: defaults plus overrides.
RunConfig load_config(const std::string &path,
                      const std::vector<std::string> &overrides = {});

/// "a:b:step" (inclusive) or a comma list. Throws ConfigError when empty.
std::vector<double> parse_range(const std::string &text);

std::uint64_t fnv1a(const std::string &text);

/// YAML text of every effective setting.
std::string resolved_yaml(const RunConfig &config);

} // namespace oamloop::app
