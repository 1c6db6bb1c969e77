#pragma once

// Post-pulse DC current density from interfering degenerate excited
// substates, and the magnetostatics it produces.

#include "oamloop/coupling.hpp"
#include "oamloop/dynamics.hpp"

#include <Eigen/Dense>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace oamloop::observables {

enum class ChargeConvention {
  electron,    ///< charge current J = -j (electron charge -e)
  probability, ///< raw probability current
};

struct CurrentOptions {
  double eta = 1e-6; ///< degeneracy tolerance, hartree
  int spin = 2;
  ChargeConvention convention = ChargeConvention::electron;
};

/// D_{ll'} = spin sum_k conj(B_lk) B_l'k for |e_l - e_l'| < eta, else 0.
/// Hermitian by construction.
Eigen::MatrixXcd interference_matrix(const dynamics::ExcitationState &state,
                                     double eta, int spin);

/// Pointwise evaluation of j = sum Im(D_ll' conj(psi_l) grad psi_l').
class CurrentEvaluator {
public:
  CurrentEvaluator(const dynamics::ExcitationState &state,
                   const structure::Basis &basis,
                   const CurrentOptions &options = {});

  /// Probability current at a point; zero at the origin itself.
  Vec3 operator()(const Vec3 &point) const;
  bool vanishes() const { return active_.empty(); }
  const Eigen::MatrixXcd &interference() const { return d_; }

private:
  const structure::Basis *basis_;
  std::vector<std::size_t> active_; ///< targets with nonzero D row
  Eigen::MatrixXcd d_;              ///< restricted to active targets
};

/// Convenience wrapper around CurrentEvaluator.
Vec3 dc_current_density(const dynamics::ExcitationState &state,
                        const structure::Basis &basis, const Vec3 &point,
                        const CurrentOptions &options = {});

struct CurrentField {
  numerics::QuadratureGrid grid;
  std::vector<Vec3> samples; ///< probability current, [ir * n_ang + ia]
  ChargeConvention convention = ChargeConvention::electron;
  /// max over samples of the imaginary part left by the symmetric form,
  /// relative to max|j|
  double imaginary_residue = 0.0;

  double charge_factor() const {
    return convention == ChargeConvention::electron ? -1.0 : 1.0;
  }
  double max_norm() const;
};

/// Current on the workspace grid (the workspace must tabulate all targets).
CurrentField current_field(const dynamics::ExcitationState &state,
                           const coupling::Workspace &ws,
                           const CurrentOptions &options = {});

/// Sample an arbitrary probability-current field on a grid.
CurrentField synthetic_field(const numerics::QuadratureGrid &grid,
                             const std::function<Vec3(const Vec3 &)> &j,
                             ChargeConvention convention =
                                 ChargeConvention::probability);

/// Gaussian tube of width s around the circle of radius a in the xy plane,
/// carrying total current I counterclockwise about +z.
std::function<Vec3(const Vec3 &)> ring_current(double a, double s,
                                                double current);

/// Grid with radial and polar segments clustered on such a tube.
numerics::QuadratureGrid ring_grid(double a, double s, double r_max,
                                   int azimuth_count = 64);

struct CylindricalNorms {
  double rho = 0.0, phi = 0.0, z = 0.0; ///< integrated L2 norms
};
CylindricalNorms cylindrical_decomposition(const CurrentField &field);

struct MagneticsResult {
  Vec3 moment_au = Vec3::Zero(); ///< charge-convention applied
  double moment_z_muB = 0.0;
  double transverse_ratio = 0.0; ///< |m_perp| / |m_z|
  Vec3 b_center_au = Vec3::Zero();
  double b_center_z_T = 0.0;
  double loop_current_au = 0.0; ///< flux of J_phi through a half plane
  double effective_radius = 0.0; ///< sqrt(|m_z| / (pi |I|)), bohr
  double boundary_ratio = 0.0;   ///< max|j| just outside r_cut / max|j|
  std::vector<std::string> warnings;
};

/// (1/2) int r x J.
MagneticsResult magnetic_moment(const CurrentField &field);

/// (mu0 / 4 pi) int_{r > r_cut} r' x J / r'^3, the field at the origin of a
/// current element at r'. A counterclockwise loop gives positive B_z.
MagneticsResult b_field_center(const CurrentField &field, double r_cut = 0.5);

/// Moment, center field, loop current and effective radius together.
MagneticsResult magnetics(const CurrentField &field, double r_cut = 0.5);

/// int j . n dS over the sphere of the given radius (angular rule of order
/// `order`); zero for a divergence-free current.
double radial_flux(const CurrentEvaluator &current, double radius,
                   int order = 40);

enum class Plane { xy, xz };

struct PlaneSample {
  Plane plane = Plane::xy;
  double extent = 0.0; ///< lattice covers [-extent, extent]^2
  int resolution = 0;
  std::vector<Vec3> points;
  std::vector<Vec3> current; ///< probability current
};

/// Regular resolution x resolution lattice. Throws DomainError for
/// resolution < 32.
PlaneSample sample_current_plane(const CurrentEvaluator &current, Plane plane,
                                 double extent, int resolution);

void write_plane(std::ostream &out, const PlaneSample &sample);

/// Sum of |j| over the lattice times the cell area.
double integrated_magnitude(const PlaneSample &sample);

/// Azimuthal mean of |j| in the xy plane at n_rho radii in (0, rho_max].
std::vector<double> ring_profile(const CurrentEvaluator &current,
                                 double rho_max, int n_rho, int n_phi = 64);

/// Local maxima of a profile exceeding rel_threshold of its maximum.
int count_maxima(const std::vector<double> &profile,
                 double rel_threshold = 0.01);

/// (max - min) / mean of |j| over the azimuth at radius rho in the xy plane.
double azimuthal_variation(const CurrentEvaluator &current, double rho,
                           int n_phi = 64);

} // namespace oamloop::observables
