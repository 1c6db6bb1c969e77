#pragma once

// Linearly polarized Laguerre-Gaussian vortex pulse in the paraxial,
// transverse-dipole limit (the e^{i q_z z} phase is dropped across the cage).

#include "oamloop/numerics.hpp"

namespace oamloop::beam {

enum class Normalization {
  peak,    ///< C = A0 / (|m|^{|m|/2} e^{-|m|/2}): ring peak equals A0
  literal, ///< C = A0 / (|m|^{|m|/2} e^{+|m|/2}), the formula as printed
};

struct VortexPulse {
  double amplitude = 0.0; ///< A0, positive-frequency amplitude (a.u.)
  int charge = 0;         ///< topological charge m_OAM
  int radial_index = 0;   ///< p
  double waist = 0.0;     ///< w0, bohr
  double omega = 0.0;     ///< carrier, hartree
  double delta = 0.0;     ///< envelope exp(-delta t^2), a.u.^-2
  double offset = 0.0;    ///< rho0: distance of the optical axis from the cage
  double offset_angle = 0.0; ///< azimuth of the optical axis around the cage
  Vec3 polarization{1.0, 0.0, 0.0};
  double qz = 0.0; ///< carried for reference only
  Normalization normalization = Normalization::peak;
};

/// Throws DomainError unless w0 > 0, delta > 0, |m| <= 40, 0 <= p <= 8 and
/// the polarization is a transverse unit vector.
void validate(const VortexPulse &pulse);

/// sqrt(|m|/2) w0. Throws DomainError for m = 0.
double rho_max(int charge, double waist);

/// C_{m,p}; p > 0 uses a numeric search for the ring peak.
double normalization(double amplitude, int charge, int radial_index = 0,
                     Normalization mode = Normalization::peak);

/// C exp(-rho^2/w0^2) (sqrt(2) rho/w0)^{|m|} L_p^{|m|}(2 rho^2/w0^2).
double mode_profile(const VortexPulse &pulse, double rho);

/// Position of the optical axis in the cage frame.
Vec3 axis_position(const VortexPulse &pulse);

/// Scalar spatial mode a(r) = C f(rho') e^{i m phi'} and its gradient.
struct ModeSample {
  cplx value;
  CVec3 gradient; ///< transverse; z-component is zero
};
ModeSample spatial_mode(const VortexPulse &pulse, const Vec3 &point);

double envelope(const VortexPulse &pulse, double t);

/// Positive-frequency A(r, t) = eps a(r) e^{-delta t^2} e^{-i omega t}.
CVec3 vector_potential(const VortexPulse &pulse, const Vec3 &point, double t);

/// div A of the positive-frequency part.
cplx divergence_A(const VortexPulse &pulse, const Vec3 &point, double t);

/// Amplitude FWHM of exp(-delta t^2), in fs.
double envelope_fwhm(double delta);
/// Inverse of envelope_fwhm.
double delta_from_fwhm(double fwhm_fs);

/// A0 = E0 / omega with I = (1/2) eps0 c E0^2.
double amplitude_from_intensity(double intensity_w_cm2, double omega);
double intensity_from_amplitude(double amplitude, double omega);

} // namespace oamloop::beam
