#include "oamloop/app/scan.hpp"

#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"

#include <cmath>
#include <sstream>

namespace oamloop::app {

namespace {

std::vector<double> default_range(double a, double b, double h) {
  std::vector<double> v;
  const long n = static_cast<long>(std::floor((b - a) / h + 1e-9));
  for (long i = 0; i <= n; ++i)
    v.push_back(a + static_cast<double>(i) * h);
  return v;
}

std::optional<double> configured_ratio(const RunConfig &c) {
  if (c.rho0_nm)
    return std::nullopt;
  return c.rho_ratio.value_or(0.0);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

/// Local maxima of |m_z| along a spectrum, above 1% of the largest.
std::vector<double> peak_positions(const ScanResult &s) {
  std::vector<double> mag;
  for (const auto &r : s.records)
    mag.push_back(std::abs(r.result.magnetics.moment_au.z()));
  std::vector<double> peaks;
  double mx = 0.0;
  for (double m : mag)
    mx = std::max(mx, m);
  for (std::size_t i = 0; i < mag.size(); ++i) {
    const double l = i > 0 ? mag[i - 1] : 0.0;
    const double r = i + 1 < mag.size() ? mag[i + 1] : 0.0;
    if (mag[i] > l && mag[i] >= r && mag[i] > 0.01 * mx)
      peaks.push_back(s.records[i].axes[0]);
  }
  return peaks;
}

} // namespace

ScanResult run_spectrum(const Model &model, int threads) {
  const RunConfig &c = model.config;
  const std::vector<double> omegas = c.scan_omega_eV.empty()
                                         ? default_range(5.0, 18.0, 0.05)
                                         : c.scan_omega_eV;
  if (!c.scan_rho_ratio.empty() || !c.scan_charge.empty())
    throw ConfigError("spectrum scans photon energy only");
  ScanResult s;
  s.command = "spectrum";
  s.axis_names = {"omega_eV"};
  const auto ratio = configured_ratio(c);
  auto results = parallel_map(omegas.size(), threads, [&](std::size_t i) {
    return evaluate_point(model, c.charge, ratio,
                          units::ev_to_hartree(omegas[i]));
  });
  for (std::size_t i = 0; i < omegas.size(); ++i)
    s.records.push_back({{omegas[i]}, std::move(results[i])});
  std::string peaks;
  for (double p : peak_positions(s))
    peaks += (peaks.empty() ? "" : ",") + fmt(p);
  s.summary.push_back("charge: " + std::to_string(c.charge));
  s.summary.push_back("resonance_peaks_eV: " + (peaks.empty() ? "none" : peaks));
  return s;
}

ScanResult run_heatmap(const Model &model, int threads) {
  const RunConfig &c = model.config;
  if (!c.scan_charge.empty())
    throw ConfigError("heatmap scans photon energy and rho0/rho_max only");
  if (c.rho0_nm)
    throw ConfigError("heatmap needs the offset as rho_ratio");
  const std::vector<double> omegas = c.scan_omega_eV.empty()
                                         ? default_range(5.0, 18.0, 0.25)
                                         : c.scan_omega_eV;
  const std::vector<double> ratios = c.scan_rho_ratio.empty()
                                         ? default_range(0.0, 1.0, 0.1)
                                         : c.scan_rho_ratio;
  if (c.charge == 0)
    for (double r : ratios)
      if (r != 0.0)
        throw ConfigError("rho0/rho_max needs a nonzero charge");
  ScanResult s;
  s.command = "heatmap";
  s.axis_names = {"omega_eV", "rho_ratio"};
  const std::size_t nr = ratios.size();
  auto results =
      parallel_map(omegas.size() * nr, threads, [&](std::size_t i) {
        return evaluate_point(model, c.charge, ratios[i % nr],
                              units::ev_to_hartree(omegas[i / nr]));
      });
  for (std::size_t i = 0; i < results.size(); ++i)
    s.records.push_back(
        {{omegas[i / nr], ratios[i % nr]}, std::move(results[i])});
  s.summary.push_back("charge: " + std::to_string(c.charge));
  return s;
}

ChargeSweepAnalysis analyze_charge_sweep(const ScanResult &sweep) {
  ChargeSweepAnalysis a;
  double best = -1.0;
  double b14 = NAN, b20 = NAN;
  for (const auto &r : sweep.records) {
    const int q = r.result.charge;
    const double b = std::abs(r.result.magnetics.b_center_au.z());
    if (q < 0)
      continue;
    if (b > best) {
      best = b;
      a.argmax = q;
    }
    if (q > 0 && b != 0.0)
      a.cutoff = std::max(a.cutoff, q);
    if (q == 14)
      b14 = r.result.magnetics.b_center_au.z();
    if (q == 20)
      b20 = r.result.magnetics.b_center_au.z();
  }
  for (const auto &r : sweep.records)
    if (r.result.charge > a.cutoff && a.cutoff > 0)
      a.cutoff_found = true;
  if (!std::isnan(b14) && !std::isnan(b20) && b14 != 0.0)
    a.flatness = std::abs(b20 - b14) / std::abs(b14);
  return a;
}

ScanResult run_charge_sweep(const Model &model, int threads,
                            ChargeSweepAnalysis *analysis) {
  const RunConfig &c = model.config;
  if (!c.scan_omega_eV.empty() || !c.scan_rho_ratio.empty())
    throw ConfigError("charge-sweep scans the charge only");
  std::vector<int> charges = c.scan_charge;
  if (charges.empty())
    for (int q = 0; q <= 20; ++q)
      charges.push_back(q);
  const auto ratio = configured_ratio(c);
  const double omega =
      c.omega_eV ? units::ev_to_hartree(*c.omega_eV)
                 : resonant_omega(model, c.charge == 0 ? 1 : c.charge,
                                  {ratio}, threads);
  ScanResult s;
  s.command = "charge-sweep";
  s.axis_names = {"charge"};
  auto results = parallel_map(charges.size(), threads, [&](std::size_t i) {
    const int q = charges[i];
    // rho_max is undefined without a vortex; the Gaussian sits on the cage.
    std::optional<double> r = ratio;
    if (q == 0 && r)
      r = 0.0;
    return evaluate_point(model, q, r, omega);
  });
  for (std::size_t i = 0; i < charges.size(); ++i)
    s.records.push_back({{static_cast<double>(charges[i])},
                         std::move(results[i])});
  const ChargeSweepAnalysis a = analyze_charge_sweep(s);
  if (analysis)
    *analysis = a;
  s.summary.push_back("omega_eV: " + fmt(units::hartree_to_ev(omega)));
  s.summary.push_back("rho_ratio: " +
                      (ratio ? fmt(*ratio) : std::string("absolute")));
  s.summary.push_back(
      "cutoff_charge: " +
      (a.cutoff_found ? std::to_string(a.cutoff) : std::string("not reached")));
  s.summary.push_back("cutoff_charge_reference: 7");
  s.summary.push_back("argmax_charge: " + std::to_string(a.argmax));
  s.summary.push_back("argmax_charge_reference: 3");
  s.summary.push_back("flatness_B20_vs_B14: " +
                      (a.flatness >= 0.0 ? fmt(a.flatness)
                                         : std::string("not swept")));
  return s;
}

PlanesResult run_planes(const Model &model, int threads) {
  const RunConfig &c = model.config;
  const auto ratio = configured_ratio(c);
  const double omega = c.omega_eV
                           ? units::ev_to_hartree(*c.omega_eV)
                           : resonant_omega(model, c.charge == 0 ? 1 : c.charge,
                                            {ratio}, threads);
  const beam::VortexPulse pulse =
      make_pulse(c, c.charge, c.offset_for(c.charge, ratio), omega);
  const PointState st = solve_point(model, pulse);
  observables::CurrentOptions co;
  co.eta = c.eta;
  co.convention = c.convention;
  const observables::CurrentEvaluator j(st.excitation, model.basis, co);

  PlanesResult p;
  p.omega_eV = units::hartree_to_ev(omega);
  p.offset_bohr = pulse.offset;
  p.xy = observables::sample_current_plane(j, observables::Plane::xy,
                                           c.plane_extent, c.plane_resolution);
  p.xz = observables::sample_current_plane(j, observables::Plane::xz,
                                           c.plane_extent, c.plane_resolution);
  p.empty = j.vanishes();
  const auto coarse =
      observables::sample_current_plane(j, observables::Plane::xy,
                                        c.plane_extent, 32);
  const auto fine =
      observables::sample_current_plane(j, observables::Plane::xy,
                                        c.plane_extent, 64);
  const double i32 = observables::integrated_magnitude(coarse);
  const double i64 = observables::integrated_magnitude(fine);
  p.refinement_change = i64 > 0.0 ? std::abs(i64 - i32) / i64 : 0.0;
  p.ring_profile = observables::ring_profile(j, c.plane_extent, 400);
  p.ring_count = observables::count_maxima(p.ring_profile);
  std::size_t peak = 0;
  for (std::size_t i = 0; i < p.ring_profile.size(); ++i)
    if (p.ring_profile[i] > p.ring_profile[peak])
      peak = i;
  const double rho_peak = c.plane_extent * (peak + 1) / p.ring_profile.size();
  p.azimuthal_variation = observables::azimuthal_variation(j, rho_peak);

  p.summary.push_back("omega_eV: " + fmt(p.omega_eV));
  p.summary.push_back("charge: " + std::to_string(c.charge));
  p.summary.push_back("ring_count: " + std::to_string(p.ring_count));
  p.summary.push_back("ring_count_reference: 3");
  p.summary.push_back("strongest_ring_radius_bohr: " + fmt(rho_peak));
  p.summary.push_back("azimuthal_variation_at_peak: " +
                      fmt(p.azimuthal_variation));
  p.summary.push_back("refinement_change_32_vs_64: " +
                      fmt(p.refinement_change));
  if (p.empty)
    p.summary.push_back("warning: current vanishes identically");
  return p;
}

} // namespace oamloop::app
