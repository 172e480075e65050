/**
 * @file scenarios.hpp
 * @brief Seeded framework generators, named fixtures, greedy edge
 * augmentation and the UGV/UAV heterogeneous case study.
 */
#pragma once

#include "brl/agents.hpp"
#include "brl/graph.hpp"
#include "brl/numeric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace brl {

enum class Placement { generic_random, collinear, named_fixture };

struct GeneratorSpec {
  /// One entry: homogeneous. n entries: per-agent spaces.
  std::vector<MetricSpace> spaces;
  int n = 3;
  /// Fraction of complete-graph edges, in (0, 1]. Ignored when `graph` is set.
  double density = 1.0;
  std::optional<SensingGraph> graph;
  std::uint64_t seed = 1;
  Placement placement = Placement::generic_random;
  Eigen::Vector3d collinear_axis = Eigen::Vector3d::UnitX();
  std::string fixture;
};

/// Deterministic in `spec.seed`. Generic placements are sampled in the
/// unit box and resampled until well spread: minimum pairwise distance
/// >= 0.1 and second-largest singular value of the centered positions
/// >= 0.05 times the largest. The graph is a random spanning tree plus
/// random extra edges up to round(density * m_K).
/// Throws ValidationError when the density cannot yield a connected graph.
Framework random_framework(const GeneratorSpec& spec);

/// "triangle-r2-complete", "square-cycle-r2", "square-diagonal-r2",
/// "star-r2-5", "cube-r3", "triangle-se2-complete", "tetra-se3-complete",
/// "hetero-case-study".
Framework named_fixture(std::string_view name);
std::vector<std::string> fixture_names();

struct AugmentResult {
  Framework framework;
  std::vector<Edge> added;
};

/// Adds the candidate edge with the largest rank gain (ties: canonical
/// order) until the framework is IBR.
AugmentResult augment_to_ibr(const Framework& fw, const TolerancePolicy& pol = {});

/// Three planar R^2 x S^1 ground robots (z = 0) and one SE(3) aerial agent
/// (z in [0.5, 1]) on the complete directed graph.
Framework hetero_case_study(std::uint64_t seed = 7);

/// Splits the sensing graph by measuring agent: first the edges whose head
/// is an agent for which `first` holds, then the rest.
std::pair<SensingGraph, SensingGraph> split_by_head(const SensingGraph& g, const std::vector<bool>& first);

}  // namespace brl
