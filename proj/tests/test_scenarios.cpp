#include "brl/error.hpp"
#include "brl/io.hpp"
#include "brl/rigidity.hpp"
#include "brl/scenarios.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

using namespace brl;
using brl::test::all_spaces;
using brl::test::random_homogeneous;

TEST(Generator, DeterministicInSeed) {
  for (const MetricSpace& space : all_spaces()) {
    const Framework a = random_homogeneous(space, 6, 0.5, 99);
    const Framework b = random_homogeneous(space, 6, 0.5, 99);
    EXPECT_EQ(framework_to_json(a).dump(), framework_to_json(b).dump()) << space.name();
    const Framework c = random_homogeneous(space, 6, 0.5, 100);
    EXPECT_NE(framework_to_json(a).dump(), framework_to_json(c).dump()) << space.name();
  }
}

TEST(Generator, GraphKindDensityAndConnectivity) {
  for (const MetricSpace& space : all_spaces()) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Framework fw = random_homogeneous(space, 7, 0.4, seed);
      EXPECT_EQ(fw.graph().kind(), space.tag() == SpaceTag::rd ? GraphKind::undirected : GraphKind::directed);
      EXPECT_TRUE(fw.graph().is_connected());
      const int mk = complete_graph(fw.graph()).edge_count();
      EXPECT_EQ(fw.edge_count(), static_cast<int>(std::lround(0.4 * mk)));
      EXPECT_TRUE(is_non_degenerate(fw).non_degenerate);
      EXPECT_TRUE(kernel_inclusion_check(fw));
    }
  }
}

TEST(Generator, FullDensityIsComplete) {
  const Framework fw = random_homogeneous(MetricSpace::se3(), 5, 1.0, 4);
  EXPECT_EQ(fw.graph(), complete_graph(fw.graph()));
}

TEST(Generator, RejectsImpossibleDensity) {
  EXPECT_THROW(random_homogeneous(MetricSpace::euclidean(2), 8, 0.1, 1), ValidationError);
  EXPECT_THROW(random_homogeneous(MetricSpace::euclidean(2), 5, 0.0, 1), ValidationError);
  EXPECT_THROW(random_homogeneous(MetricSpace::euclidean(2), 5, 1.5, 1), ValidationError);
}

TEST(Generator, ExplicitGraphIsUsed) {
  GeneratorSpec spec;
  spec.spaces = {MetricSpace::euclidean(2)};
  spec.n = 4;
  spec.graph = SensingGraph(4, {{0, 1}, {1, 2}, {2, 3}}, GraphKind::undirected);
  EXPECT_EQ(random_framework(spec).graph(), *spec.graph);
}

TEST(Generator, CollinearPlacementIsDegenerate) {
  GeneratorSpec spec;
  spec.spaces = {MetricSpace::euclidean(3)};
  spec.n = 5;
  spec.placement = Placement::collinear;
  spec.collinear_axis = Eigen::Vector3d::UnitX();
  const DegeneracyReport r = is_non_degenerate(random_framework(spec));
  EXPECT_FALSE(r.non_degenerate);
  EXPECT_NEAR(std::abs(r.direction.x()), 1.0, 1e-12);
}

TEST(Generator, PerAgentSpaces) {
  GeneratorSpec spec;
  spec.spaces = {MetricSpace::euclidean_circle(2), MetricSpace::se3(), MetricSpace::euclidean_circle(2)};
  spec.n = 3;
  const Framework fw = random_framework(spec);
  EXPECT_FALSE(fw.homogeneous());
  EXPECT_EQ(fw.graph().kind(), GraphKind::directed);
  spec.n = 4;
  EXPECT_THROW(random_framework(spec), ValidationError);
}

TEST(Fixtures, AllBuildAndMatchTheirClaims) {
  for (const std::string& name : fixture_names()) EXPECT_NO_THROW(named_fixture(name)) << name;
  EXPECT_THROW(named_fixture("no-such-fixture"), ValidationError);

  EXPECT_EQ(ibr_verdict(named_fixture("triangle-r2-complete")).rank, 3);
  EXPECT_EQ(ibr_verdict(named_fixture("square-cycle-r2")).classification, Classification::ibf);
  EXPECT_EQ(ibr_verdict(named_fixture("square-diagonal-r2")).classification, Classification::ibr);
  EXPECT_EQ(ibr_verdict(named_fixture("star-r2-5")).classification, Classification::ibf);
  EXPECT_EQ(ibr_verdict(named_fixture("triangle-se2-complete")).rank, 5);
  EXPECT_EQ(ibr_verdict(named_fixture("tetra-se3-complete")).rank, 17);
}

TEST(Augment, SquareGetsOneDiagonal) {
  const AugmentResult r = augment_to_ibr(named_fixture("square-cycle-r2"));
  ASSERT_EQ(r.added.size(), 1u);
  const Edge e = r.added.front();
  EXPECT_TRUE((e == Edge{0, 2}) || (e == Edge{1, 3}));
  const RigidityVerdict v = ibr_verdict(r.framework);
  EXPECT_EQ(v.classification, Classification::ibr);
  EXPECT_EQ(v.rank, 5);
}

TEST(Augment, AlreadyRigidAddsNothing) {
  const Framework fw = named_fixture("triangle-se2-complete");
  const AugmentResult r = augment_to_ibr(fw);
  EXPECT_TRUE(r.added.empty());
  EXPECT_EQ(r.framework.graph(), fw.graph());
}

TEST(Augment, StarReachesFullRank) {
  const AugmentResult r = augment_to_ibr(named_fixture("star-r2-5"));
  const RigidityVerdict v = ibr_verdict(r.framework);
  EXPECT_EQ(v.classification, Classification::ibr);
  EXPECT_EQ(v.rank, 7);
  EXPECT_FALSE(r.added.empty());
}

TEST(Augment, RandomSparseFrameworksReachExpectedRank) {
  for (const MetricSpace& space : all_spaces()) {
    const Framework fw = random_homogeneous(space, 5, 0.4, 6);
    const AugmentResult r = augment_to_ibr(fw);
    const int c = space.controllable_dofs();
    EXPECT_EQ(ibr_verdict(r.framework).rank, c * 5 - c - 1) << space.name();
    EXPECT_EQ(r.framework.edge_count(), fw.edge_count() + static_cast<int>(r.added.size()));
  }
}

TEST(CaseStudy, PlacementAndSubgraphs) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Framework fw = hetero_case_study(seed);
    ASSERT_EQ(fw.agent_count(), 4);
    EXPECT_EQ(fw.edge_count(), 12);
    for (int i = 0; i < 3; ++i) {
      EXPECT_EQ(fw.space(i), MetricSpace::euclidean_circle(2));
      EXPECT_EQ(fw.state(i).p.z(), 0.0);
    }
    EXPECT_EQ(fw.space(3), MetricSpace::se3());
    EXPECT_GT(fw.state(3).p.z(), 0.0);

    const auto [g1, g2] = split_by_head(fw.graph(), {true, true, true, false});
    EXPECT_EQ(g1.edge_count(), 9);
    EXPECT_EQ(g2.edge_count(), 3);
    const Framework f1 = fw.with_graph(g1);
    const Framework f2 = fw.with_graph(g2);
    EXPECT_EQ(hetero_kernel_analysis(f1).verdict.classification, Classification::ibf);
    EXPECT_EQ(hetero_kernel_analysis(f2).verdict.classification, Classification::ibf);

    // UAV attitude is invisible to the ground robots' measurements.
    const Eigen::MatrixXd b1 = unified_rigidity_matrix(f1).M;
    EXPECT_TRUE(b1.middleCols(12 + 9, 3).isZero(0.0));
  }
  EXPECT_THROW(split_by_head(hetero_case_study(1).graph(), {true, false}), ValidationError);
}
