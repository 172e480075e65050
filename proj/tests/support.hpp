#pragma once

#include "brl/agents.hpp"
#include "brl/graph.hpp"
#include "brl/numeric.hpp"
#include "brl/random.hpp"
#include "brl/scenarios.hpp"

#include <Eigen/Dense>

#include <vector>

namespace brl::test {

inline std::vector<AgentState> at_points(std::initializer_list<Eigen::Vector3d> points) {
  std::vector<AgentState> out;
  for (const auto& p : points) out.push_back(AgentState::at(p));
  return out;
}

inline Framework r2_framework(std::initializer_list<Eigen::Vector3d> points, std::vector<Edge> edges) {
  const int n = static_cast<int>(points.size());
  return Framework(SensingGraph(n, std::move(edges), GraphKind::undirected), MetricSpace::euclidean(2),
                   at_points(points));
}

inline Framework unit_square(std::vector<Edge> edges) {
  return r2_framework({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}, std::move(edges));
}

inline std::vector<Edge> square_cycle() { return {{0, 1}, {1, 2}, {2, 3}, {0, 3}}; }

inline Framework random_homogeneous(const MetricSpace& space, int n, double density, std::uint64_t seed) {
  GeneratorSpec spec;
  spec.spaces = {space};
  spec.n = n;
  spec.density = density;
  spec.seed = seed;
  return random_framework(spec);
}

/// R^2, R^3, R^2 x S^1, R^3 x S^1 (tilted axis) and SE(3).
inline std::vector<MetricSpace> all_spaces() {
  return {MetricSpace::euclidean(2), MetricSpace::euclidean(3), MetricSpace::euclidean_circle(2),
          MetricSpace::euclidean_circle(3, Eigen::Vector3d(1, 2, 2).normalized()), MetricSpace::se3()};
}

inline Eigen::MatrixXd random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.normal();
  }
  return m;
}

}  // namespace brl::test
