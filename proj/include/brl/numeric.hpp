/**
 * @file numeric.hpp
 * @brief Projectors, skew maps, rotations, tolerance-aware rank/null space
 * and subspace comparison.
 */
#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <string_view>

namespace brl {

/// Thresholds applied wherever an exact rank statement meets floating point.
struct TolerancePolicy {
  /// Singular values at or below rank_rtol * sigma_max count as zero.
  /// Unset means 1e-10 * max(rows, cols) of the matrix at hand.
  std::optional<double> rank_rtol;
  /// Frobenius bound on projector residuals in subspace comparisons.
  double subspace_tol = 1e-8;
  /// Finite-difference step.
  double fd_step = 1e-6;

  [[nodiscard]] double effective_rank_rtol(Eigen::Index rows, Eigen::Index cols) const;
  /// Throws ValidationError unless every threshold is strictly positive.
  void validate() const;

  /// Named presets: "default", "strict", "loose".
  static TolerancePolicy preset(std::string_view name);
};

/// I_d - (x/|x|)(x/|x|)^T. Throws ValidationError on a zero vector.
Eigen::MatrixXd orthogonal_projector(const Eigen::VectorXd& x);
Eigen::Matrix3d orthogonal_projector(const Eigen::Vector3d& x);

/// skew(x) * y == x.cross(y)
Eigen::Matrix3d skew(const Eigen::Vector3d& x);

/// Rodrigues rotation. A zero axis yields the identity (non-rotating
/// agents); any other axis must have unit norm within 1e-9.
Eigen::Matrix3d rotation_axis_angle(double angle, const Eigen::Vector3d& axis);

/// Planar rotation by `angle`.
Eigen::Matrix2d rotation_2d(double angle);

/// A (x) B
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct RankNullspace {
  int rank = 0;
  Eigen::MatrixXd null_basis;  // cols x nullity, orthonormal columns
  Eigen::VectorXd singular_values;
  double threshold = 0.0;      // absolute cutoff actually used
};

/// SVD-based numerical rank and orthonormal kernel basis.
/// Throws NumericalError on non-finite entries.
RankNullspace rank_and_nullspace(const Eigen::MatrixXd& m, const TolerancePolicy& pol);

inline int numerical_rank(const Eigen::MatrixXd& m, const TolerancePolicy& pol) {
  return rank_and_nullspace(m, pol).rank;
}

/// Orthonormal basis of the column space of `a` (numerical rank under `pol`).
Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& a, const TolerancePolicy& pol);

/// ||(I - Q Q^T) x||_F for orthonormal Q.
double residual_outside(const Eigen::MatrixXd& x, const Eigen::MatrixXd& q);

enum class SubspaceRelation { equal, a_subset_b, b_subset_a, incomparable };

std::string_view to_string(SubspaceRelation r);

/// Compares span(A) and span(B) by projector residuals. Inputs are
/// orthonormalized internally. Throws ValidationError when the ambient
/// dimensions differ.
SubspaceRelation subspace_relation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                   const TolerancePolicy& pol);

}  // namespace brl
