#include "brl/error.hpp"
#include "brl/numeric.hpp"
#include "brl/random.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace brl;
using brl::test::random_matrix;

TEST(TolerancePolicy, DefaultsAndPresets) {
  const TolerancePolicy pol;
  EXPECT_FALSE(pol.rank_rtol.has_value());
  EXPECT_DOUBLE_EQ(pol.subspace_tol, 1e-8);
  EXPECT_DOUBLE_EQ(pol.fd_step, 1e-6);
  EXPECT_DOUBLE_EQ(pol.effective_rank_rtol(36, 24), 36e-10);
  TolerancePolicy fixed;
  fixed.rank_rtol = 1e-9;
  EXPECT_DOUBLE_EQ(fixed.effective_rank_rtol(36, 24), 1e-9);

  for (const char* name : {"default", "strict", "loose"}) EXPECT_NO_THROW(TolerancePolicy::preset(name).validate());
  EXPECT_LT(TolerancePolicy::preset("strict").subspace_tol, TolerancePolicy::preset("loose").subspace_tol);
  EXPECT_THROW(TolerancePolicy::preset("sloppy"), ValidationError);
}

TEST(TolerancePolicy, RejectsNonPositive) {
  TolerancePolicy pol;
  pol.subspace_tol = 0.0;
  EXPECT_THROW(pol.validate(), ValidationError);
  pol = {};
  pol.fd_step = -1e-6;
  EXPECT_THROW(pol.validate(), ValidationError);
  pol = {};
  pol.rank_rtol = 0.0;
  EXPECT_THROW(pol.validate(), ValidationError);
  pol = {};
  pol.subspace_tol = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(pol.validate(), ValidationError);
}

TEST(Projector, Examples) {
  Eigen::MatrixXd e1_expected(2, 2);
  e1_expected << 0, 0, 0, 1;
  EXPECT_TRUE(orthogonal_projector(Eigen::VectorXd(Eigen::Vector2d(1, 0))).isApprox(e1_expected));

  Eigen::MatrixXd diag_expected(2, 2);
  diag_expected << 0.5, -0.5, -0.5, 0.5;
  EXPECT_LT((orthogonal_projector(Eigen::VectorXd(Eigen::Vector2d(1, 1) / std::sqrt(2.0))) - diag_expected)
                .norm(),
            1e-15);
  // Input need not be unit length.
  EXPECT_LT((orthogonal_projector(Eigen::VectorXd(Eigen::Vector2d(3, 3))) - diag_expected).norm(), 1e-15);

  EXPECT_THROW(orthogonal_projector(Eigen::VectorXd(Eigen::Vector3d::Zero())), ValidationError);
  EXPECT_THROW(orthogonal_projector(Eigen::Vector3d::Zero().eval()), ValidationError);
}

TEST(Projector, RandomProperties) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + static_cast<int>(rng.index(5));
    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x(i) = rng.normal();
    const Eigen::MatrixXd p = orthogonal_projector(x);
    EXPECT_LT((p * p - p).norm(), 1e-12);
    EXPECT_LT((p - p.transpose()).norm(), 1e-15);
    EXPECT_LT((p * x).norm(), 1e-12 * x.norm());
    EXPECT_NEAR(p.trace(), d - 1, 1e-12);
  }
}

TEST(Skew, ExampleAndCrossProduct) {
  Eigen::Matrix3d expected;
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  EXPECT_EQ(skew(Eigen::Vector3d::UnitZ()), expected);
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Vector3d x(rng.normal(), rng.normal(), rng.normal());
    const Eigen::Vector3d y(rng.normal(), rng.normal(), rng.normal());
    EXPECT_LT((skew(x) * y - x.cross(y)).norm(), 1e-14);
    EXPECT_EQ(skew(x), Eigen::Matrix3d(-skew(x).transpose()));
  }
}

TEST(Rotation, Examples) {
  Eigen::Matrix3d quarter;
  quarter << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  EXPECT_LT((rotation_axis_angle(std::numbers::pi / 2, Eigen::Vector3d::UnitZ()) - quarter).norm(), 1e-15);
  EXPECT_EQ(rotation_axis_angle(0.0, Eigen::Vector3d::UnitX()), Eigen::Matrix3d::Identity());
  EXPECT_EQ(rotation_axis_angle(1.3, Eigen::Vector3d::Zero()), Eigen::Matrix3d::Identity());
  EXPECT_THROW(rotation_axis_angle(1.0, Eigen::Vector3d(1, 1, 0)), ValidationError);
  EXPECT_LT((rotation_2d(std::numbers::pi / 2) - quarter.topLeftCorner<2, 2>()).norm(), 1e-15);
}

TEST(Rotation, RandomAreInSO3) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Vector3d axis = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal()).normalized();
    const double angle = rng.uniform(-10.0, 10.0);
    const Eigen::Matrix3d r = rotation_axis_angle(angle, axis);
    EXPECT_LT((r.transpose() * r - Eigen::Matrix3d::Identity()).norm(), 1e-13);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-13);
    EXPECT_LT((r * axis - axis).norm(), 1e-13);
    // Agrees with Eigen's own angle-axis.
    EXPECT_LT((r - Eigen::AngleAxisd(angle, axis).toRotationMatrix()).norm(), 1e-13);
  }
}

TEST(Kron, MatchesDefinition) {
  Eigen::MatrixXd a(2, 2), b(1, 2);
  a << 1, 2, 3, 4;
  b << 0, 5;
  Eigen::MatrixXd expected(2, 4);
  expected << 0, 5, 0, 10, 0, 15, 0, 20;
  EXPECT_EQ(kron(a, b), expected);
}

TEST(RankNullspace, Examples) {
  const RankNullspace id = rank_and_nullspace(Eigen::MatrixXd::Identity(3, 3), {});
  EXPECT_EQ(id.rank, 3);
  EXPECT_EQ(id.null_basis.cols(), 0);

  const RankNullspace zero = rank_and_nullspace(Eigen::MatrixXd::Zero(2, 2), {});
  EXPECT_EQ(zero.rank, 0);
  EXPECT_EQ(zero.null_basis.cols(), 2);
  EXPECT_LT((zero.null_basis.transpose() * zero.null_basis - Eigen::MatrixXd::Identity(2, 2)).norm(), 1e-15);

  const RankNullspace ones = rank_and_nullspace(Eigen::MatrixXd::Ones(2, 2), {});
  EXPECT_EQ(ones.rank, 1);
  ASSERT_EQ(ones.null_basis.cols(), 1);
  const Eigen::Vector2d v = ones.null_basis.col(0);
  EXPECT_NEAR(std::abs(v.dot(Eigen::Vector2d(1, -1) / std::sqrt(2.0))), 1.0, 1e-14);
}

TEST(RankNullspace, EdgeCases) {
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(rank_and_nullspace(bad, {}), NumericalError);
  bad(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(rank_and_nullspace(bad, {}), NumericalError);

  const RankNullspace wide = rank_and_nullspace(Eigen::MatrixXd::Ones(1, 4), {});
  EXPECT_EQ(wide.rank, 1);
  EXPECT_EQ(wide.null_basis.cols(), 3);

  const RankNullspace empty = rank_and_nullspace(Eigen::MatrixXd(0, 3), {});
  EXPECT_EQ(empty.rank, 0);
  EXPECT_EQ(empty.null_basis.cols(), 3);
}

TEST(RankNullspace, ThresholdFollowsPolicy) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(3, 3);
  m(2, 2) = 1e-9;
  TolerancePolicy loose;
  loose.rank_rtol = 1e-8;
  TolerancePolicy strict;
  strict.rank_rtol = 1e-10;
  EXPECT_EQ(numerical_rank(m, loose), 2);
  EXPECT_EQ(numerical_rank(m, strict), 3);
}

TEST(RankNullspace, RandomLowRankResidualBound) {
  Rng rng(17);
  for (int t = 0; t < 60; ++t) {
    const int rows = 3 + static_cast<int>(rng.index(10));
    const int cols = 3 + static_cast<int>(rng.index(10));
    const int r = 1 + static_cast<int>(rng.index(static_cast<std::uint64_t>(std::min(rows, cols))));
    const Eigen::MatrixXd m = random_matrix(rng, rows, r) * random_matrix(rng, r, cols);
    const TolerancePolicy pol;
    const RankNullspace rn = rank_and_nullspace(m, pol);
    EXPECT_EQ(rn.rank, r);
    EXPECT_EQ(rn.null_basis.cols(), cols - r);
    const double sigma_max = rn.singular_values.size() ? rn.singular_values(0) : 0.0;
    EXPECT_LE((m * rn.null_basis).norm(), pol.effective_rank_rtol(rows, cols) * sigma_max * cols + 1e-12);
    EXPECT_LT((rn.null_basis.transpose() * rn.null_basis -
               Eigen::MatrixXd::Identity(cols - r, cols - r)).norm(),
              1e-12);
  }
}

TEST(OrthonormalColumns, SpansInput) {
  Rng rng(23);
  const Eigen::MatrixXd base = random_matrix(rng, 6, 2);
  Eigen::MatrixXd a(6, 3);
  a << base, base.col(0) + 2 * base.col(1);
  const Eigen::MatrixXd q = orthonormal_columns(a, {});
  EXPECT_EQ(q.cols(), 2);
  EXPECT_LT(residual_outside(a, q), 1e-12);
}

TEST(SubspaceRelation, Examples) {
  const Eigen::MatrixXd e1 = Eigen::MatrixXd::Identity(3, 1);
  const Eigen::MatrixXd e12 = Eigen::MatrixXd::Identity(3, 2);
  const Eigen::MatrixXd e2 = Eigen::MatrixXd::Identity(3, 3).col(1);
  const TolerancePolicy pol;
  EXPECT_EQ(subspace_relation(e1, e12, pol), SubspaceRelation::a_subset_b);
  EXPECT_EQ(subspace_relation(e12, e1, pol), SubspaceRelation::b_subset_a);
  EXPECT_EQ(subspace_relation(e1, e1, pol), SubspaceRelation::equal);
  EXPECT_EQ(subspace_relation(e1, e2, pol), SubspaceRelation::incomparable);
  EXPECT_EQ(to_string(SubspaceRelation::a_subset_b), "A_subset_B");
  EXPECT_THROW(subspace_relation(e1, Eigen::MatrixXd::Identity(4, 1), pol), ValidationError);
}

TEST(SubspaceRelation, BasisChoiceDoesNotMatter) {
  Rng rng(29);
  for (int t = 0; t < 30; ++t) {
    const Eigen::MatrixXd a = random_matrix(rng, 7, 3);
    const Eigen::MatrixXd mix = random_matrix(rng, 3, 3);
    EXPECT_EQ(subspace_relation(a, a * mix, {}), SubspaceRelation::equal);
    Eigen::MatrixXd bigger(7, 4);
    bigger << a * mix, random_matrix(rng, 7, 1);
    EXPECT_EQ(subspace_relation(a, bigger, {}), SubspaceRelation::a_subset_b);
  }
}

TEST(SubspaceRelation, EmptySubspaces) {
  const Eigen::MatrixXd none(4, 0);
  const Eigen::MatrixXd some = Eigen::MatrixXd::Identity(4, 2);
  EXPECT_EQ(subspace_relation(none, none, {}), SubspaceRelation::equal);
  EXPECT_EQ(subspace_relation(none, some, {}), SubspaceRelation::a_subset_b);
}

TEST(Rng, DeterministicAndInRange) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  Rng c(7);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(c.index(5), 5u);
}
