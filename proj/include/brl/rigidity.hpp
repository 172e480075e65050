/**
 * @file rigidity.hpp
 * @brief Bearing rigidity matrices, variation subspaces and rigidity
 * verdicts.
 *
 * Column layout, both representations: all translational velocities first
 * (agent-major), then all rotational ones. Rows are grouped per edge in the
 * canonical edge order of bearing_graph().
 *
 * Per-space matrix: (d*m) x (c*n), with d the bearing dimension and c the
 * controllable dofs per agent. Unified matrix: (3m) x (6n),
 *
 *   B = [ D_p Ebar^T   D_o Ebar_out^T ],
 *   D_p = diag(d_ij R_i^T P(pbar_ij)),  D_o = -diag(R_i^T [pbar_ij]_x V_i).
 *
 * Signs of the rotational blocks follow the derivative of the bearing
 * function; fd_jacobian_check() is the reference for them.
 *
 * Relation between properties: IBR <=> GBR => BR for every space; in R^d
 * all three coincide. Only IBR is computed, the others are reported as
 * implications.
 */
#pragma once

#include "brl/agents.hpp"
#include "brl/graph.hpp"
#include "brl/numeric.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace brl {

enum class Representation { per_space, unified };

std::string_view to_string(Representation r);

struct RowBlock {
  Edge edge;
  Eigen::Index offset = 0;
  int size = 0;
};

struct AgentColumns {
  Eigen::Index translation_offset = 0;
  int translation_size = 0;
  Eigen::Index rotation_offset = 0;
  int rotation_size = 0;
};

struct RigidityMatrix {
  Eigen::MatrixXd M;
  Representation representation = Representation::per_space;
  std::vector<RowBlock> row_blocks;     // one per edge
  std::vector<AgentColumns> col_blocks;  // one per agent
};

/// Per-space matrix of a homogeneous framework. Throws ValidationError for
/// heterogeneous frameworks.
RigidityMatrix rigidity_matrix(const Framework& fw);

/// 3m x 6n matrix for any framework. Purely planar homogeneous frameworks
/// use the zero-padded 2D projector, everything else the full 3D one.
RigidityMatrix unified_rigidity_matrix(const Framework& fw);

/// Per-space for homogeneous frameworks, unified for heterogeneous ones.
RigidityMatrix analysis_matrix(const Framework& fw);

/// Unified-matrix column indices of the controllable dofs, ordered to match
/// the per-space column layout (homogeneous frameworks).
std::vector<Eigen::Index> controllable_columns(const Framework& fw);

/// chi (+) h*delta: positions move additively, S^1 angles by h*rate and
/// SE(3) rotations by exp(h [omega]_x) R (omega in the world frame).
/// In the unified representation delta is first masked to controllable
/// motion (see mask_unified_variation), and planar agents of a
/// heterogeneous framework stay on z = 0.
Framework apply_variation(const Framework& fw, const Eigen::VectorXd& delta, double h, Representation rep);

/// Zeroes the unified coordinates an agent cannot actuate: z velocity of
/// purely planar frameworks, rotation components outside span(V_i).
Eigen::VectorXd mask_unified_variation(const Framework& fw, const Eigen::VectorXd& delta);

/// ||B delta - (b(chi (+) h delta) - b(chi)) / h|| / max(||B delta||, ||delta||).
double fd_directional_error(const Framework& fw, const Eigen::VectorXd& delta, double h, Representation rep);

/// Max of fd_directional_error over `trials` random unit variations at
/// h = pol.fd_step. Deterministic in `seed`.
double fd_jacobian_check(const Framework& fw, int trials, const TolerancePolicy& pol, std::uint64_t seed = 1,
                         Representation rep = Representation::per_space);

enum class VariationLabel {
  translation_x,
  translation_y,
  translation_z,
  scaling,
  coord_rotation_x,
  coord_rotation_y,
  coord_rotation_z,
  coord_rotation_axis,  // about the R^3 x S^1 axis when it is not a world axis
  virtual_variation,
  unlabeled,
};

std::string_view to_string(VariationLabel label);

struct SubspaceBasis {
  Eigen::Index ambient_dim = 0;
  Eigen::MatrixXd basis;  // orthonormal columns
  std::vector<VariationLabel> labels;

  [[nodiscard]] int dim() const { return static_cast<int>(basis.cols()); }
};

/// Translations, scaling and coordinated rotations in per-space
/// coordinates: d+1, d+2 or 7 columns. Throws ValidationError for
/// heterogeneous or degenerate frameworks.
SubspaceBasis trivial_variation_basis(const Framework& fw, const TolerancePolicy& pol = {});

/// Coordinate directions of the identically-zero columns of the unified
/// matrix.
SubspaceBasis virtual_variation_basis(const Framework& fw);

enum class Classification { ibr, ibf };

std::string_view to_string(Classification c);

struct RigidityVerdict {
  int rank = 0;
  int nullity = 0;
  int columns = 0;
  int complete_rank = 0;
  std::optional<int> expected_rank;  // c*n - c - 1, homogeneous and non-degenerate only
  std::optional<bool> rank_test;
  bool kernel_equal_to_complete = false;
  bool kernel_inclusion_holds = true;
  bool degenerate = false;
  bool criteria_agree = true;
  Classification classification = Classification::ibf;
  Representation representation = Representation::per_space;
  std::vector<std::string> implied;
  std::vector<std::string> notes;
};

/// IBR iff Ker B_G == Ker B_K. For non-degenerate homogeneous frameworks
/// the rank test rank(B_G) == c*n - c - 1 is also evaluated and
/// criteria_agree records whether both tests give the same answer.
RigidityVerdict ibr_verdict(const Framework& fw, const TolerancePolicy& pol = {});

/// Ker B_K subset of Ker B_G. Holds for every framework; false means a
/// numerical or construction problem.
bool kernel_inclusion_check(const Framework& fw, const TolerancePolicy& pol = {});

/// Same bearings over the sensing graph.
bool bearing_equivalent(const Framework& a, const Framework& b, const TolerancePolicy& pol = {});
/// Same bearings over the complete graph.
bool bearing_congruent(const Framework& a, const Framework& b, const TolerancePolicy& pol = {});

struct HeteroAnalysis {
  SubspaceBasis trivial;    // Ker B_K with the virtual directions removed
  SubspaceBasis virtual_;   // zero columns of the unified matrix
  RigidityVerdict verdict;  // unified representation
  int complete_rank = 0;
  int complete_nullity = 0;
  int zero_columns = 0;
};

/// Unified-representation analysis that separates trivial from virtual
/// variations. Intended for heterogeneous frameworks; works on any.
HeteroAnalysis hetero_kernel_analysis(const Framework& fw, const TolerancePolicy& pol = {});

/// Dimension of the trivial variation set of a collinear formation:
/// R^d: n+d-1; R^d x S^1: n+d, or 2n+d-1 when d=3 and the rotation axis is
/// the alignment direction; SE(3): 2n+4. Throws ValidationError for n < 3
/// or for the axis flag with d = 2.
int degenerate_trivial_dim(const MetricSpace& space, int n, bool collinear_axis_equals_rotation_axis);

/// Row-reduced complete-graph matrix for homogeneous R^d: one row per
/// vertex pair and per direction orthogonal to p_ij (1 for d=2, 2 for
/// d=3). Same rank as B_K; used as an independent rank oracle.
Eigen::MatrixXd reduced_complete_matrix(const Framework& fw);

}  // namespace brl
