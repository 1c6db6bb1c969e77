#pragma once

// Light-matter matrix elements <psi_j| H_int |psi_k> for the positive-
// frequency part of the vortex field, H_int = -(1/2)(p.A + A.p) with p = -i grad.

#include "oamloop/beam.hpp"
#include "oamloop/numerics.hpp"
#include "oamloop/structure.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace oamloop::coupling {

/// H_int psi at a point, expanded as -i A.grad(psi) - (i/2)(div A) psi.
cplx apply_interaction(const beam::VortexPulse &pulse,
                       const structure::Orbital &orbital,
                       const structure::Basis &basis, const Vec3 &point);

/// The symmetrized form -(i/2)[div(A psi) + A.grad(psi)] with div(A psi)
/// taken by a fourth-order central stencil of step h. Used to cross-check
/// the expanded operator.
cplx apply_interaction_unexpanded(const beam::VortexPulse &pulse,
                                  const structure::Orbital &orbital,
                                  const structure::Basis &basis,
                                  const Vec3 &point, double h = 1e-3);

/// Orbital values and gradients tabulated on a product grid. Radial and
/// angular factors are stored separately; nodes must have r > 0.
class Workspace {
public:
  Workspace(const structure::Basis &basis, numerics::QuadratureGrid grid,
            const std::vector<std::size_t> &orbitals);

  const numerics::QuadratureGrid &grid() const { return grid_; }
  const structure::Basis &basis() const { return *basis_; }
  bool contains(std::size_t orbital) const { return slot_.count(orbital) > 0; }

  cplx value(std::size_t orbital, std::size_t ir, std::size_t ia) const;
  CVec3 gradient(std::size_t orbital, std::size_t ir, std::size_t ia) const;

  /// Values on the angular nodes of radial shell ir, one column per orbital.
  void shell_values(std::size_t ir, const std::vector<std::size_t> &orbitals,
                    Eigen::MatrixXcd &values) const;
  /// Gradient component c (0..2) on shell ir, one column per orbital.
  void shell_gradients(std::size_t ir, int component,
                       const std::vector<std::size_t> &orbitals,
                       Eigen::MatrixXcd &grads) const;

private:
  std::size_t slot(std::size_t orbital) const;

  const structure::Basis *basis_;
  numerics::QuadratureGrid grid_;
  std::unordered_map<std::size_t, std::size_t> slot_;
  std::vector<std::size_t> radial_of_slot_;
  // [radial function][ir]
  std::vector<std::vector<double>> radial_value_, radial_derivative_;
  // [slot] -> n_ang entries
  std::vector<Eigen::VectorXcd> angular_value_;
  std::vector<Eigen::MatrixXcd> angular_gradient_; // n_ang x 3
  std::unordered_map<std::size_t, std::size_t> radial_slot_;
};

/// Quadrature of conj(psi_bra) H_int psi_ket by direct point evaluation.
/// Slow reference path; see coupling_matrix for the tabulated one.
cplx matrix_element(const structure::Basis &basis, std::size_t bra,
                    std::size_t ket, const beam::VortexPulse &pulse,
                    const numerics::QuadratureGrid &grid);

struct CouplingResult {
  Eigen::MatrixXcd value;       ///< rows: bras, columns: kets
  Eigen::MatrixXd absolute;     ///< int |psi_bra| |H psi_ket|, same shape
};

/// All <bra|H_int|ket> on the workspace grid. Summation order is fixed
/// (per shell, then pairwise over shells).
CouplingResult coupling_matrix(const Workspace &ws,
                               const std::vector<std::size_t> &bras,
                               const std::vector<std::size_t> &kets,
                               const beam::VortexPulse &pulse);

struct TransitionOptions {
  int source_band = 2;
  int target_band = 3;
  /// Entries below this fraction of max|M| are pruned (recorded).
  double prune_threshold = 1e-14;
  /// Entries whose |M| / int|psi_j||H psi_k| falls below this have cancelled
  /// to rounding level (symmetry-forbidden) and are pruned as well.
  double cancellation_threshold = 1e-13;
  bool convergence_check = false;
  /// Relative change tolerated when the grid is doubled.
  double convergence_tolerance = 1e-6;
};

struct TransitionSet {
  std::vector<std::size_t> sources; ///< occupied orbitals (columns)
  std::vector<std::size_t> targets; ///< unoccupied orbitals (rows)
  Eigen::MatrixXcd raw;             ///< M_{jk} as integrated
  Eigen::MatrixXd significance;     ///< |M| / int|psi_j||H psi_k|
  Eigen::MatrixXd convergence;      ///< |M_fine - M| / max|M|; empty if unchecked
  std::vector<std::pair<std::size_t, std::size_t>> pruned; ///< (row, col)
  beam::VortexPulse pulse;
  int radial_count = 0;
  int angular_order = 0;
  double max_abs = 0.0;
  std::vector<std::string> warnings;

  bool is_pruned(std::size_t row, std::size_t col) const;
  /// raw with pruned entries set to exactly zero
  Eigen::MatrixXcd effective() const;
};

/// Occupied(source band) x unoccupied(target band) matrix elements.
TransitionSet build_transition_set(const structure::Basis &basis,
                                   const beam::VortexPulse &pulse,
                                   const Workspace &ws,
                                   const TransitionOptions &options = {});

/// Rescale a transition set to a new amplitude (the operator is linear in A0).
TransitionSet rescale(const TransitionSet &set, double new_amplitude);

/// Text table "k j l_k m_k l_j m_j Re(M) Im(M)"; m is the dominant m of the
/// substate's coefficient vector.
void write_transition_table(std::ostream &out, const TransitionSet &set,
                            const structure::Basis &basis);

/// Dominant m component of an orbital (the m with largest |C_m|).
int dominant_m(const structure::Orbital &orbital);

} // namespace oamloop::coupling
