#pragma once

// Model fullerene electronic basis: radial bands of spherical shells with a
// parabolic angular-momentum dispersion.

#include "oamloop/numerics.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oamloop::structure {

struct BandSpec {
  int n = 0;
  double offset_energy = 0.0; ///< E_n, hartree
  int l_max = 0;
  double shell_radius = 0.0; ///< R_n, bohr
  double shell_width = 0.0;  ///< sigma_n, bohr
  int electron_count = 0;
};

/// Linear combination of normalized Gaussian shells
/// N exp(-(r - R)^2 / (2 sigma^2)), each with int_0^inf N^2 ... r^2 dr = 1.
struct RadialFunction {
  struct Term {
    double coefficient;
    double center;
    double width;
  };
  std::vector<Term> terms;

  double value(double r) const;
  double derivative(double r) const;
};

/// Exact overlap int_0^inf f g r^2 dr of two radial functions.
double radial_overlap(const RadialFunction &f, const RadialFunction &g);

/// Single normalized Gaussian shell for a band.
RadialFunction gaussian_shell(double center, double width);

struct Orbital {
  int n = 0;
  int l = 0;
  std::string rep;  ///< representation label p_l
  int lambda = 0;   ///< substate index within the representation
  double energy = 0.0;
  std::vector<cplx> coefficients; ///< C_{l,m}, indexed by m + l
  bool occupied = false;
  int spin_degeneracy = 2;
  std::size_t radial_index = 0; ///< into Basis::radials

  cplx coefficient(int m) const { return coefficients[m + l]; }
};

/// Tabulated symmetry-adapted combinations of Y_lm.
struct SymmetryCoefficients {
  struct Substate {
    int l = 0;
    std::string rep;
    int lambda = 0;
    std::vector<cplx> coefficients; ///< indexed by m + l
  };
  std::vector<Substate> substates;

  bool covers(int l) const;
  std::vector<const Substate *> for_l(int l) const;
};

struct ModelConfig {
  std::vector<BandSpec> bands;
  double cage_radius = 6.7; ///< R in the parabolic dispersion, bohr
  /// Fill order of m values for a partially occupied shell, keyed by band n.
  /// Default is lowest |m| first: 0, 1, -1, 2, -2, ...
  std::map<int, std::vector<int>> partial_fill;
  std::optional<SymmetryCoefficients> symmetry;
  /// Energy shift per representation label (hartree), symmetry mode only.
  std::map<std::string, double> rep_shift;
  /// Orthogonalize each band's shells against lower bands of equal l.
  bool orthogonalize = true;
};

/// C60-like defaults: band 1 (pi, 180 e), band 2 (valence, 60 e, l <= 5),
/// band 3 (SAMO, empty, l <= 3). Energies and widths are model choices.
ModelConfig default_model();

struct Basis {
  std::vector<BandSpec> bands;
  std::vector<Orbital> orbitals; ///< ordered by (n, l, lambda)
  std::vector<RadialFunction> radials;
  double cage_radius = 0.0;

  const BandSpec &band(int n) const;
  /// Indices of orbitals in band n, optionally restricted by occupation.
  std::vector<std::size_t> band_orbitals(int n) const;
  std::vector<std::size_t> occupied_in(int n) const;
  std::vector<std::size_t> unoccupied_in(int n) const;
  int max_l() const;
  int occupied_electrons() const;
};

/// E_n + l(l+1)/(2 R^2). Throws DomainError for l > band.l_max.
double parabolic_energy(const BandSpec &band, int l, double cage_radius);

/// Throws ConfigError on inconsistent bands or impossible occupations.
Basis build_basis(const ModelConfig &config);

/// Normalized Gaussian shell profile of a band (before orthogonalization).
double radial_profile(const BandSpec &band, double r);

/// Angular factor sum_m C_m Y_lm at a unit vector.
cplx angular_value(const Orbital &orbital, const Vec3 &unit);
/// Tangential gradient sum_m C_m r grad Y_lm at a unit vector.
CVec3 angular_gradient(const Orbital &orbital, const Vec3 &unit);

/// psi(r) = R_nl(r) sum_m C_m Y_lm. At the origin the +z direction is used.
cplx evaluate_orbital(const Orbital &orbital, const Basis &basis,
                      const Vec3 &point);

/// Analytic Cartesian gradient. Throws SingularPointError at r = 0, where
/// shell profiles with R(0) != 0 are not differentiable.
CVec3 evaluate_gradient(const Orbital &orbital, const Basis &basis,
                        const Vec3 &point);

/// Parse "l rep lambda m re im" rows ('#' comments). Throws ParseError with
/// the offending line, NormalizationError if a substate's norm deviates from
/// 1 by more than 1e-8 or substates of one l are not orthonormal.
SymmetryCoefficients parse_symmetry_coefficients(std::istream &in);
SymmetryCoefficients load_symmetry_coefficients(const std::string &path);

} // namespace oamloop::structure
