#include "oamloop/beam.hpp"
#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

namespace oamloop::beam {

namespace {

cplx ipow(cplx w, int n) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < n; ++i)
    r *= w;
  return r;
}

// |e^{-s} (2s)^{a/2} L_p^a(2s)| with s = rho^2 / w0^2.
double ring_factor(int a, int p, double s) {
  return std::abs(std::exp(-s) * std::pow(2.0 * s, 0.5 * a) *
                  numerics::laguerre(p, a, 2.0 * s));
}

double numeric_ring_peak(int a, int p) {
  // Coarse scan then golden-section refinement around the best sample.
  const int samples = 4000;
  const double s_hi = 4.0 * (a + 2.0 * p + 2.0);
  double best_s = 0.0, best = ring_factor(a, p, 0.0);
  for (int i = 1; i <= samples; ++i) {
    const double s = s_hi * i / samples;
    const double v = ring_factor(a, p, s);
    if (v > best) {
      best = v;
      best_s = s;
    }
  }
  double lo = std::max(0.0, best_s - s_hi / samples);
  double hi = best_s + s_hi / samples;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double x1 = hi - g * (hi - lo);
    const double x2 = lo + g * (hi - lo);
    if (ring_factor(a, p, x1) > ring_factor(a, p, x2))
      hi = x2;
    else
      lo = x1;
  }
  return std::max(best, ring_factor(a, p, 0.5 * (lo + hi)));
}

// All (|m| <= 40, 1 <= p <= 8) peaks, built once; the search is far too
// slow to repeat per field evaluation.
double cached_ring_peak(int a, int p) {
  static const auto table = [] {
    std::array<std::array<double, 9>, 41> t{};
    for (int aa = 0; aa <= 40; ++aa)
      for (int pp = 1; pp <= 8; ++pp)
        t[aa][pp] = numeric_ring_peak(aa, pp);
    return t;
  }();
  if (a > 40 || p < 1 || p > 8)
    return numeric_ring_peak(a, p);
  return table[a][p];
}

} // namespace

void validate(const VortexPulse &pulse) {
  if (!(pulse.waist > 0.0))
    throw DomainError("beam waist must be positive");
  if (!(pulse.delta > 0.0))
    throw DomainError("envelope parameter delta must be positive");
  if (std::abs(pulse.charge) > 40)
    throw DomainError("|m_OAM| must not exceed 40");
  if (pulse.radial_index < 0 || pulse.radial_index > 8)
    throw DomainError("radial index p must lie in [0, 8]");
  if (std::abs(pulse.polarization.norm() - 1.0) > 1e-12 ||
      pulse.polarization.z() != 0.0)
    throw DomainError("polarization must be a transverse unit vector");
}

double rho_max(int charge, double waist) {
  if (charge == 0)
    throw DomainError("rho_max undefined for m_OAM = 0");
  return std::sqrt(std::abs(charge) / 2.0) * waist;
}

double normalization(double amplitude, int charge, int radial_index,
                     Normalization mode) {
  const int a = std::abs(charge);
  if (mode == Normalization::literal) {
    if (a == 0)
      return amplitude;
    return amplitude / (std::pow(a, 0.5 * a) * std::exp(0.5 * a));
  }
  if (radial_index == 0) {
    if (a == 0)
      return amplitude;
    return amplitude / (std::pow(a, 0.5 * a) * std::exp(-0.5 * a));
  }
  return amplitude / cached_ring_peak(a, radial_index);
}

double mode_profile(const VortexPulse &pulse, double rho) {
  const int a = std::abs(pulse.charge);
  const double c = normalization(pulse.amplitude, pulse.charge,
                                 pulse.radial_index, pulse.normalization);
  const double s = rho * rho / (pulse.waist * pulse.waist);
  return c * std::exp(-s) * std::pow(std::sqrt(2.0) * rho / pulse.waist, a) *
         numerics::laguerre(pulse.radial_index, a, 2.0 * s);
}

Vec3 axis_position(const VortexPulse &pulse) {
  return {pulse.offset * std::cos(pulse.offset_angle),
          pulse.offset * std::sin(pulse.offset_angle), 0.0};
}

ModeSample spatial_mode(const VortexPulse &pulse, const Vec3 &point) {
  const int a = std::abs(pulse.charge);
  const int p = pulse.radial_index;
  const double w0 = pulse.waist;
  const Vec3 axis = axis_position(pulse);
  const double x = point.x() - axis.x();
  const double y = point.y() - axis.y();
  const double sgn = pulse.charge >= 0 ? 1.0 : -1.0;
  // (sqrt(2)/w0)^a (x' +- i y')^a == (sqrt(2) rho'/w0)^a e^{i m phi'}
  const cplx w = cplx(x, sgn * y) * (std::sqrt(2.0) / w0);
  const double s = (x * x + y * y) / (w0 * w0);
  const double c = normalization(pulse.amplitude, pulse.charge, p,
                                 pulse.normalization);
  const double gauss = std::exp(-s);
  const double lag = numerics::laguerre(p, a, 2.0 * s);
  const double dlag = p > 0 ? -numerics::laguerre(p - 1, a + 1, 2.0 * s) : 0.0;

  const cplx wa = ipow(w, a);
  ModeSample out;
  out.value = c * wa * gauss * lag;
  const cplx dwa = a > 0 ? static_cast<double>(a) * ipow(w, a - 1) *
                               (std::sqrt(2.0) / w0)
                         : cplx{0.0, 0.0};
  // d/dx and d/dy of the Gaussian-Laguerre radial factor
  const double radial_dx = (-2.0 * x / (w0 * w0)) * lag + dlag * 4.0 * x / (w0 * w0);
  const double radial_dy = (-2.0 * y / (w0 * w0)) * lag + dlag * 4.0 * y / (w0 * w0);
  const cplx dx = c * gauss * (dwa * lag + wa * radial_dx);
  const cplx dy = c * gauss * (dwa * cplx(0.0, sgn) * lag + wa * radial_dy);
  out.gradient = CVec3(dx, dy, 0.0);
  return out;
}

double envelope(const VortexPulse &pulse, double t) {
  return std::exp(-pulse.delta * t * t);
}

CVec3 vector_potential(const VortexPulse &pulse, const Vec3 &point, double t) {
  const cplx time = envelope(pulse, t) * std::exp(cplx(0.0, -pulse.omega * t));
  return (spatial_mode(pulse, point).value * time) *
         pulse.polarization.cast<cplx>();
}

cplx divergence_A(const VortexPulse &pulse, const Vec3 &point, double t) {
  const cplx time = envelope(pulse, t) * std::exp(cplx(0.0, -pulse.omega * t));
  const CVec3 g = spatial_mode(pulse, point).gradient;
  return pulse.polarization.cast<cplx>().dot(g) * time;
}

double envelope_fwhm(double delta) {
  if (!(delta > 0.0))
    throw DomainError("envelope_fwhm: delta must be positive");
  return units::au_to_fs(2.0 * std::sqrt(std::log(2.0) / delta));
}

double delta_from_fwhm(double fwhm_fs) {
  if (!(fwhm_fs > 0.0))
    throw DomainError("delta_from_fwhm: FWHM must be positive");
  const double t = units::fs_to_au(fwhm_fs);
  return 4.0 * std::log(2.0) / (t * t);
}

double amplitude_from_intensity(double intensity_w_cm2, double omega) {
  if (intensity_w_cm2 < 0.0 || !(omega > 0.0))
    throw DomainError("intensity must be >= 0 and omega > 0");
  return std::sqrt(intensity_w_cm2 / units::atomic_intensity_in_W_per_cm2) /
         omega;
}

double intensity_from_amplitude(double amplitude, double omega) {
  const double e0 = omega * amplitude;
  return e0 * e0 * units::atomic_intensity_in_W_per_cm2;
}

} // namespace oamloop::beam
