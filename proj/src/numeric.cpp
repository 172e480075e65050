#include "brl/numeric.hpp"

#include "brl/error.hpp"

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace brl {

double TolerancePolicy::effective_rank_rtol(Eigen::Index rows, Eigen::Index cols) const {
  if (rank_rtol) return *rank_rtol;
  return 1e-10 * static_cast<double>(std::max<Eigen::Index>({rows, cols, 1}));
}

void TolerancePolicy::validate() const {
  if (rank_rtol && !(*rank_rtol > 0.0)) throw ValidationError("rank_rtol must be > 0");
  if (!(subspace_tol > 0.0)) throw ValidationError("subspace_tol must be > 0");
  if (!(fd_step > 0.0)) throw ValidationError("fd_step must be > 0");
}

TolerancePolicy TolerancePolicy::preset(std::string_view name) {
  TolerancePolicy pol;
  if (name.empty() || name == "default") return pol;
  if (name == "strict") {
    pol.rank_rtol = 1e-12;
    pol.subspace_tol = 1e-10;
    pol.fd_step = 1e-7;
    return pol;
  }
  if (name == "loose") {
    pol.rank_rtol = 1e-7;
    pol.subspace_tol = 1e-6;
    pol.fd_step = 1e-5;
    return pol;
  }
  throw ValidationError("unknown tolerance profile '" + std::string(name) + "'");
}

Eigen::MatrixXd orthogonal_projector(const Eigen::VectorXd& x) {
  const double norm = x.norm();
  if (!std::isfinite(norm)) throw NumericalError("orthogonal projector of a non-finite vector");
  if (!(norm > 0.0)) throw ValidationError("orthogonal projector of a zero vector (coincident agents?)");
  const Eigen::VectorXd u = x / norm;
  return Eigen::MatrixXd::Identity(x.size(), x.size()) - u * u.transpose();
}

Eigen::Matrix3d orthogonal_projector(const Eigen::Vector3d& x) {
  const double norm = x.norm();
  if (!std::isfinite(norm)) throw NumericalError("orthogonal projector of a non-finite vector");
  if (!(norm > 0.0)) throw ValidationError("orthogonal projector of a zero vector (coincident agents?)");
  const Eigen::Vector3d u = x / norm;
  return Eigen::Matrix3d::Identity() - u * u.transpose();
}

Eigen::Matrix3d skew(const Eigen::Vector3d& x) {
  Eigen::Matrix3d s;
  // clang-format off
  s <<  0.0,  -x.z(),  x.y(),
        x.z(),  0.0,  -x.x(),
       -x.y(),  x.x(),  0.0;
  // clang-format on
  return s;
}

Eigen::Matrix3d rotation_axis_angle(double angle, const Eigen::Vector3d& axis) {
  const double norm = axis.norm();
  if (norm == 0.0) return Eigen::Matrix3d::Identity();
  if (std::abs(norm - 1.0) > 1e-9) {
    throw ValidationError("rotation axis must be a unit vector or zero");
  }
  return Eigen::AngleAxisd(angle, axis / norm).toRotationMatrix();
}

Eigen::Matrix2d rotation_2d(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix2d r;
  r << c, -s, s, c;
  return r;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

RankNullspace rank_and_nullspace(const Eigen::MatrixXd& m, const TolerancePolicy& pol) {
  if (!m.allFinite()) throw NumericalError("matrix has NaN or Inf entries");
  RankNullspace out;
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0 || cols == 0) {
    out.null_basis = Eigen::MatrixXd::Identity(cols, cols);
    out.singular_values = Eigen::VectorXd(0);
    return out;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  const double sigma_max = out.singular_values.size() > 0 ? out.singular_values(0) : 0.0;
  out.threshold = pol.effective_rank_rtol(m.rows(), cols) * sigma_max;

  int rank = 0;
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    if (out.singular_values(i) > out.threshold) ++rank;
  }
  out.rank = rank;
  out.null_basis = svd.matrixV().rightCols(cols - rank);
  return out;
}

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& a, const TolerancePolicy& pol) {
  if (a.cols() == 0 || a.rows() == 0) return Eigen::MatrixXd(a.rows(), 0);
  if (!a.allFinite()) throw NumericalError("basis has NaN or Inf entries");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double cutoff = pol.effective_rank_rtol(a.rows(), a.cols()) * (s.size() > 0 ? s(0) : 0.0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > cutoff) ++r;
  return svd.matrixU().leftCols(r);
}

double residual_outside(const Eigen::MatrixXd& x, const Eigen::MatrixXd& q) {
  if (x.cols() == 0) return 0.0;
  if (q.cols() == 0) return x.norm();
  return (x - q * (q.transpose() * x)).norm();
}

std::string_view to_string(SubspaceRelation r) {
  switch (r) {
    case SubspaceRelation::equal: return "equal";
    case SubspaceRelation::a_subset_b: return "A_subset_B";
    case SubspaceRelation::b_subset_a: return "B_subset_A";
    case SubspaceRelation::incomparable: return "incomparable";
  }
  return "unknown";
}

SubspaceRelation subspace_relation(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                   const TolerancePolicy& pol) {
  if (a.rows() != b.rows()) {
    throw ValidationError("subspace comparison across ambient dimensions " + std::to_string(a.rows()) +
                          " and " + std::to_string(b.rows()));
  }
  const Eigen::MatrixXd qa = orthonormal_columns(a, pol);
  const Eigen::MatrixXd qb = orthonormal_columns(b, pol);
  const bool a_in_b = residual_outside(qa, qb) < pol.subspace_tol;
  const bool b_in_a = residual_outside(qb, qa) < pol.subspace_tol;
  if (a_in_b && b_in_a) return SubspaceRelation::equal;
  if (a_in_b) return SubspaceRelation::a_subset_b;
  if (b_in_a) return SubspaceRelation::b_subset_a;
  return SubspaceRelation::incomparable;
}

}  // namespace brl
