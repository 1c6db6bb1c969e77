#pragma once

// Physical constants and unit conversions. Everything inside the library is
// in Hartree atomic units (hbar = m_e = e = 4 pi eps0 = 1); conversions
// happen only where values enter or leave (config parsing, CSV output).
//
// Source: CODATA 2018 recommended values (NIST SP 961, May 2019).

#include <numbers>

namespace oamloop::units {

inline constexpr double pi = std::numbers::pi;

inline constexpr double hartree_in_eV = 27.211386245988;
inline constexpr double bohr_in_nm = 0.0529177210903;
inline constexpr double atomic_time_in_fs = 0.024188843265857;
inline constexpr double atomic_current_in_A = 6.623618237510e-3;
inline constexpr double atomic_bfield_in_T = 2.35051756758e5;
inline constexpr double fine_structure = 7.2973525693e-3;
inline constexpr double speed_of_light_au = 1.0 / fine_structure;

// Atomic unit of magnetic moment is e hbar / m_e = 2 mu_B.
inline constexpr double bohr_magneton_au = 0.5;

// mu0 = 4 pi alpha^2 in atomic units (eps0 = 1/(4 pi), mu0 eps0 = 1/c^2).
inline constexpr double vacuum_permeability_au =
    4.0 * pi * fine_structure * fine_structure;

// Intensity of a linearly polarized field with unit peak amplitude,
// I = (1/2) eps0 c E^2 with E = 1 a.u.
inline constexpr double atomic_intensity_in_W_per_cm2 = 3.50944552e16;

constexpr double ev_to_hartree(double ev) { return ev / hartree_in_eV; }
constexpr double hartree_to_ev(double h) { return h * hartree_in_eV; }
constexpr double nm_to_bohr(double nm) { return nm / bohr_in_nm; }
constexpr double bohr_to_nm(double b) { return b * bohr_in_nm; }
constexpr double fs_to_au(double fs) { return fs / atomic_time_in_fs; }
constexpr double au_to_fs(double t) { return t * atomic_time_in_fs; }
constexpr double tesla_from_au(double b) { return b * atomic_bfield_in_T; }
constexpr double muB_from_au(double m) { return m / bohr_magneton_au; }
constexpr double ampere_from_au(double i) { return i * atomic_current_in_A; }

} // namespace oamloop::units
