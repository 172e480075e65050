#include "brl/error.hpp"
#include "brl/io.hpp"
#include "brl/rigidity.hpp"
#include "brl/scenarios.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <numbers>

using namespace brl;

namespace {

json parse(const char* text) { return parse_json_text(text); }

}  // namespace

TEST(GraphJson, OneBasedRoundTrip) {
  const SensingGraph g = graph_from_json(parse(R"({"n": 3, "kind": "directed", "edges": [[1,2],[3,1]]})"));
  EXPECT_EQ(g.edge_count(), 2);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(2, 0));
  EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
  EXPECT_EQ(graph_to_json(g)["edges"][0], json::array({1, 2}));
}

TEST(GraphJson, Errors) {
  EXPECT_THROW(graph_from_json(parse(R"({"kind": "directed", "edges": []})")), ParseError);
  EXPECT_THROW(graph_from_json(parse(R"({"n": "three", "kind": "directed", "edges": []})")), ParseError);
  EXPECT_THROW(graph_from_json(parse(R"({"n": 3, "kind": "directed", "edges": [[1,2,3]]})")), ParseError);
  EXPECT_THROW(graph_from_json(parse(R"({"n": 3, "kind": "directed", "edges": [[1,4]]})")), ValidationError);
  EXPECT_THROW(parse("{"), ParseError);
}

TEST(SpaceJson, NamesAndAliases) {
  EXPECT_EQ(space_from_json(json("R2")), MetricSpace::euclidean(2));
  EXPECT_EQ(space_from_json(json("SE2")), MetricSpace::euclidean_circle(2));
  EXPECT_EQ(space_from_json(parse(R"({"type": "SE3"})")), MetricSpace::se3());
  const MetricSpace tilted = space_from_json(parse(R"({"type": "R3xS1", "axis": [0, 0.6, 0.8]})"));
  EXPECT_EQ(space_from_json(space_to_json(tilted)), tilted);
  EXPECT_THROW(space_from_json(json("R3xS1")), ValidationError);
  EXPECT_THROW(space_from_json(json("R4")), ValidationError);
  EXPECT_THROW(space_from_json(json(3)), ParseError);
}

TEST(FrameworkJson, RoundTripIsExact) {
  for (const MetricSpace& space : brl::test::all_spaces()) {
    const Framework fw = brl::test::random_homogeneous(space, 5, 0.6, 31);
    const json j = framework_to_json(fw);
    const Framework back = framework_from_json(j);
    EXPECT_EQ(framework_to_json(back).dump(), j.dump()) << space.name();
    EXPECT_EQ(rigidity_matrix(back).M, rigidity_matrix(fw).M) << space.name();
  }
  const Framework h = hetero_case_study(5);
  EXPECT_EQ(framework_to_json(framework_from_json(framework_to_json(h))).dump(), framework_to_json(h).dump());
}

TEST(FrameworkJson, AxisAngleAndPlanarShorthand) {
  const Framework fw = framework_from_json(parse(R"({
    "space": "SE3",
    "graph": {"n": 3, "kind": "directed", "edges": [[1,2],[2,3],[3,1]]},
    "agents": [
      {"p": [0, 0, 0], "axis_angle": {"angle": 1.5707963267948966, "axis": [0, 0, 1]}},
      {"p": [1, 0, 0]},
      {"p": [0, 1, 0.5]}
    ]})"));
  EXPECT_LT((fw.state(0).R - rotation_axis_angle(std::numbers::pi / 2, Eigen::Vector3d::UnitZ())).norm(), 1e-15);
  EXPECT_EQ(fw.state(1).R, Eigen::Matrix3d::Identity());

  const Framework planar = framework_from_json(parse(R"({
    "space": "R2xS1",
    "graph": {"n": 3, "kind": "directed", "edges": [[1,2]]},
    "agents": [{"p": [0, 0], "alpha": -1.0}, {"p": [1, 0]}, {"p": [0, 1]}]})"));
  EXPECT_NEAR(planar.state(0).alpha, 2 * std::numbers::pi - 1.0, 1e-15);
}

TEST(FrameworkJson, Errors) {
  EXPECT_THROW(framework_from_json(parse(R"({"space": "R2", "graph": {"n": 3, "kind": "undirected", "edges": []}})")),
               ParseError);
  EXPECT_THROW(framework_from_json(parse(R"({"space": "R2",
    "graph": {"n": 3, "kind": "undirected", "edges": [[1,2]]},
    "agents": [{"p": [0, 0]}, {"p": [1]}, {"p": [0, 1]}]})")),
               ParseError);
  EXPECT_THROW(framework_from_json(parse(R"({"space": "R2",
    "graph": {"n": 3, "kind": "undirected", "edges": [[1,2]]},
    "agents": [{"p": [0, 0]}, {"p": [0, 0]}, {"p": [0, 1]}]})")),
               ValidationError);
  EXPECT_THROW(framework_from_json(parse(R"({"space": "SE3",
    "graph": {"n": 3, "kind": "directed", "edges": [[1,2]]},
    "agents": [{"p": [0,0,0], "R": [[2,0,0],[0,1,0],[0,0,1]]}, {"p": [1,0,0]}, {"p": [0,1,0]}]})")),
               ValidationError);
  EXPECT_THROW(framework_from_json(parse(R"({"space": ["SE3", "SE3"],
    "graph": {"n": 3, "kind": "directed", "edges": [[1,2]]},
    "agents": [{"p": [0,0,0]}, {"p": [1,0,0]}, {"p": [0,1,0]}]})")),
               ValidationError);
  EXPECT_THROW(load_framework("/nonexistent/framework.json"), ParseError);
}

TEST(MatrixCsv, FullPrecisionRowMajor) {
  Eigen::MatrixXd m(2, 2);
  m << 0.1, -2, 1e-300, 1.0 / 3.0;
  const std::string csv = matrix_to_csv(m);
  EXPECT_EQ(csv, "0.10000000000000001,-2\n1e-300,0.33333333333333331\n");
  EXPECT_EQ(std::stod("0.33333333333333331"), 1.0 / 3.0);
}

TEST(BlockStructure, DescribesLayout) {
  const RigidityMatrix b = rigidity_matrix(named_fixture("triangle-se2-complete"));
  const json j = block_structure_json(b);
  EXPECT_EQ(j["rows"], 12);
  EXPECT_EQ(j["cols"], 9);
  EXPECT_EQ(j["row_blocks"].size(), 6u);
  EXPECT_EQ(j["row_blocks"][0]["edge"], json::array({1, 2}));
  EXPECT_EQ(j["col_blocks"][2]["rotation"]["offset"], 8);
}

TEST(Dot, TriangleIsUndirected) {
  const std::string dot = framework_to_dot(named_fixture("triangle-r2-complete"));
  EXPECT_EQ(dot.rfind("graph framework {", 0), 0u);
  EXPECT_NE(dot.find("1 -- 2;"), std::string::npos);
  EXPECT_NE(dot.find("2 -- 3;"), std::string::npos);
  EXPECT_EQ(std::count(dot.begin(), dot.end(), '\n'), 2 + 3 + 3 + 1);
  EXPECT_EQ(dot.find("->"), std::string::npos);
}

TEST(Dot, DirectedSE3UsesArrows) {
  const Framework fw(SensingGraph(3, {{0, 1}, {1, 0}}, GraphKind::directed), MetricSpace::se3(),
                     brl::test::at_points({{0, 0, 0}, {1, 0, 0}, {0, 1, 1}}));
  const std::string dot = framework_to_dot(fw);
  EXPECT_EQ(dot.rfind("digraph framework {", 0), 0u);
  EXPECT_NE(dot.find("1 -> 2;"), std::string::npos);
  EXPECT_NE(dot.find("2 -> 1;"), std::string::npos);
}

TEST(Dot, AddedEdgesAreStyled) {
  const AugmentResult r = augment_to_ibr(named_fixture("square-cycle-r2"));
  const std::string dot = framework_to_dot(r.framework, r.added);
  const Edge e = r.added.front();
  const std::string line = std::to_string(e.head + 1) + " -- " + std::to_string(e.tail + 1) + " [";
  const auto pos = dot.find(line);
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NE(dot.substr(pos, dot.find('\n', pos) - pos).find("class=\"added\""), std::string::npos);
  std::size_t styled = 0;
  for (std::size_t at = dot.find("class=\"added\""); at != std::string::npos; at = dot.find("class=\"added\"", at + 1)) {
    ++styled;
  }
  EXPECT_EQ(styled, 1u);
}
