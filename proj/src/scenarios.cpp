#include "brl/scenarios.hpp"

#include "brl/error.hpp"
#include "brl/random.hpp"
#include "brl/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace brl {

namespace {

constexpr double kMinSeparation = 0.1;
constexpr double kMinSpread = 0.05;

Eigen::Matrix3d random_rotation(Rng& rng) {
  Eigen::Vector4d q;
  do {
    for (int c = 0; c < 4; ++c) q(c) = rng.uniform(-1.0, 1.0);
  } while (q.norm() > 1.0 || q.norm() < 1e-3);
  q.normalize();
  return Eigen::Quaterniond(q(0), q(1), q(2), q(3)).toRotationMatrix();
}

bool well_spread(const std::vector<Eigen::Vector3d>& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if ((p[i] - p[j]).norm() < kMinSeparation) return false;
    }
  }
  Eigen::MatrixXd x(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) x.row(i) = p[i].transpose();
  x.rowwise() -= x.colwise().mean();
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(x).singularValues();
  return s(1) >= kMinSpread * s(0);
}

SensingGraph random_graph(int n, bool directed, double density, Rng& rng) {
  if (!(density > 0.0 && density <= 1.0)) throw ValidationError("graph density must be in (0, 1]");
  const GraphKind kind = directed ? GraphKind::directed : GraphKind::undirected;
  const SensingGraph full = complete_graph(SensingGraph(n, {}, kind));
  const int target = static_cast<int>(std::lround(density * full.edge_count()));
  if (target < n - 1) {
    throw ValidationError("density " + std::to_string(density) + " gives " + std::to_string(target) +
                          " edges, fewer than the " + std::to_string(n - 1) + " needed to connect " +
                          std::to_string(n) + " agents");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.index(static_cast<std::uint64_t>(i + 1))]);

  std::vector<Edge> edges;
  for (int k = 1; k < n; ++k) {
    const int a = order[k];
    const int b = order[rng.index(static_cast<std::uint64_t>(k))];
    if (directed && rng.uniform() < 0.5) {
      edges.push_back({b, a});
    } else {
      edges.push_back({a, b});
    }
  }
  SensingGraph tree(n, edges, kind);

  std::vector<Edge> rest;
  for (const Edge& e : full.edges()) {
    if (!tree.has_edge(e.head, e.tail)) rest.push_back(e);
  }
  for (std::size_t i = rest.size(); i > 1; --i) std::swap(rest[i - 1], rest[rng.index(i)]);
  const auto extra = static_cast<std::size_t>(target - (n - 1));
  edges.insert(edges.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(extra));
  return SensingGraph(n, std::move(edges), kind);
}

bool space_is_planar(const std::vector<MetricSpace>& spaces, int agent) {
  return spaces.size() == 1 ? spaces.front().planar() : spaces[static_cast<std::size_t>(agent)].planar();
}

Framework make_framework(SensingGraph graph, const std::vector<MetricSpace>& spaces, std::vector<AgentState> states) {
  if (spaces.size() == 1) return Framework(std::move(graph), spaces.front(), std::move(states));
  return Framework(std::move(graph), spaces, std::move(states));
}

SensingGraph undirected(int n, std::initializer_list<std::pair<int, int>> one_based) {
  std::vector<Edge> edges;
  for (auto [i, j] : one_based) edges.push_back({i - 1, j - 1});
  return SensingGraph(n, std::move(edges), GraphKind::undirected);
}

std::vector<AgentState> at_points(std::initializer_list<Eigen::Vector3d> points) {
  std::vector<AgentState> out;
  for (const Eigen::Vector3d& p : points) out.push_back(AgentState::at(p));
  return out;
}

}  // namespace

Framework random_framework(const GeneratorSpec& spec) {
  if (spec.placement == Placement::named_fixture) return named_fixture(spec.fixture);
  if (spec.spaces.empty()) throw ValidationError("generator needs a metric space");
  if (spec.spaces.size() != 1 && spec.spaces.size() != static_cast<std::size_t>(spec.n)) {
    throw ValidationError("generator needs one space or one per agent");
  }
  if (spec.n < 3) throw ValidationError("a framework needs n >= 3 agents");

  Rng rng(spec.seed);
  const int n = spec.n;
  const bool homogeneous_rd = spec.spaces.size() == 1 && spec.spaces.front().tag() == SpaceTag::rd;
  SensingGraph graph = spec.graph ? *spec.graph : random_graph(n, !homogeneous_rd, spec.density, rng);

  std::vector<Eigen::Vector3d> points(static_cast<std::size_t>(n));
  if (spec.placement == Placement::collinear) {
    const Eigen::Vector3d axis = spec.collinear_axis.normalized();
    for (int i = 0; i < n; ++i) {
      if (space_is_planar(spec.spaces, i) && std::abs(axis.z()) > 1e-12) {
        throw ValidationError("collinear axis must lie in the plane for planar agents");
      }
    }
    // Distinct, unevenly spaced abscissae.
    double t = rng.uniform(-0.5, 0.5);
    for (int i = 0; i < n; ++i) {
      points[static_cast<std::size_t>(i)] = t * axis;
      t += rng.uniform(0.2, 0.6);
    }
  } else {
    int attempts = 0;
    do {
      if (++attempts > 10000) throw ValidationError("could not sample a well-spread placement");
      for (int i = 0; i < n; ++i) {
        Eigen::Vector3d p(rng.uniform(), rng.uniform(), rng.uniform());
        if (space_is_planar(spec.spaces, i)) p.z() = 0.0;
        points[static_cast<std::size_t>(i)] = p;
      }
    } while (!well_spread(points));
  }

  std::vector<AgentState> states;
  for (int i = 0; i < n; ++i) {
    const MetricSpace& s = spec.spaces.size() == 1 ? spec.spaces.front() : spec.spaces[static_cast<std::size_t>(i)];
    const Eigen::Vector3d& p = points[static_cast<std::size_t>(i)];
    switch (s.tag()) {
      case SpaceTag::rd: states.push_back(AgentState::at(p)); break;
      case SpaceTag::rd_s1: states.push_back(AgentState::with_angle(p, rng.uniform(0.0, 2.0 * std::numbers::pi))); break;
      case SpaceTag::se3: states.push_back(AgentState::with_rotation(p, random_rotation(rng))); break;
    }
  }
  return make_framework(std::move(graph), spec.spaces, std::move(states));
}

std::vector<std::string> fixture_names() {
  return {"triangle-r2-complete", "square-cycle-r2",       "square-diagonal-r2", "star-r2-5",
          "cube-r3",              "triangle-se2-complete", "tetra-se3-complete", "hetero-case-study"};
}

Framework named_fixture(std::string_view name) {
  const MetricSpace r2 = MetricSpace::euclidean(2);
  if (name == "triangle-r2-complete") {
    const double h = std::sqrt(3.0) / 2.0;
    return Framework(undirected(3, {{1, 2}, {1, 3}, {2, 3}}), r2,
                     at_points({{0, 0, 0}, {1, 0, 0}, {0.5, h, 0}}));
  }
  if (name == "square-cycle-r2" || name == "square-diagonal-r2") {
    auto g = name == "square-cycle-r2" ? undirected(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}})
                                       : undirected(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 3}});
    return Framework(std::move(g), r2, at_points({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}}));
  }
  if (name == "star-r2-5") {
    return Framework(undirected(5, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}), r2,
                     at_points({{0, 0, 0}, {1, 0.2, 0}, {-0.3, 1, 0}, {-1, -0.4, 0}, {0.4, -1, 0}}));
  }
  if (name == "cube-r3") {
    std::vector<AgentState> states;
    for (int v = 0; v < 8; ++v) states.push_back(AgentState::at(Eigen::Vector3d(v & 1, (v >> 1) & 1, (v >> 2) & 1)));
    std::vector<Edge> edges;
    for (int a = 0; a < 8; ++a) {
      for (int bit = 0; bit < 3; ++bit) {
        const int b = a ^ (1 << bit);
        if (a < b) edges.push_back({a, b});
      }
    }
    return Framework(SensingGraph(8, std::move(edges), GraphKind::undirected), MetricSpace::euclidean(3),
                     std::move(states));
  }
  if (name == "triangle-se2-complete") {
    const double h = std::sqrt(3.0) / 2.0;
    std::vector<AgentState> states = {AgentState::with_angle({0, 0, 0}, 0.3),
                                      AgentState::with_angle({1, 0, 0}, 2.1),
                                      AgentState::with_angle({0.5, h, 0}, 4.0)};
    return Framework(complete_graph(SensingGraph(3, {}, GraphKind::directed)), MetricSpace::euclidean_circle(2),
                     std::move(states));
  }
  if (name == "tetra-se3-complete") {
    std::vector<AgentState> states = {
        AgentState::with_rotation({0, 0, 0}, Eigen::Matrix3d::Identity()),
        AgentState::with_rotation({1, 0, 0}, rotation_axis_angle(0.7, Eigen::Vector3d::UnitZ())),
        AgentState::with_rotation({0, 1, 0}, rotation_axis_angle(-1.1, Eigen::Vector3d::UnitX())),
        AgentState::with_rotation({0.3, 0.3, 1}, rotation_axis_angle(2.0, Eigen::Vector3d(1, 1, 1).normalized())),
    };
    return Framework(complete_graph(SensingGraph(4, {}, GraphKind::directed)), MetricSpace::se3(), std::move(states));
  }
  if (name == "hetero-case-study") return hetero_case_study();
  throw ValidationError("unknown fixture '" + std::string(name) + "'");
}

AugmentResult augment_to_ibr(const Framework& fw, const TolerancePolicy& pol) {
  AugmentResult out{fw, {}};
  const SensingGraph full = complete_graph(fw.graph());
  while (ibr_verdict(out.framework, pol).classification != Classification::ibr) {
    const int base = numerical_rank(analysis_matrix(out.framework).M, pol);
    int best_gain = -1;
    std::optional<Edge> best;
    for (const Edge& e : full.edges()) {
      if (out.framework.graph().has_edge(e.head, e.tail)) continue;
      const Edge extra[] = {e};
      const Framework trial = out.framework.with_graph(with_edges(out.framework.graph(), extra));
      const int gain = numerical_rank(analysis_matrix(trial).M, pol) - base;
      if (gain > best_gain) {
        best_gain = gain;
        best = e;
      }
    }
    if (!best) break;  // already complete
    const Edge extra[] = {*best};
    out.framework = out.framework.with_graph(with_edges(out.framework.graph(), extra));
    out.added.push_back(*best);
  }
  return out;
}

Framework hetero_case_study(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::Vector3d> points(4);
  do {
    for (int i = 0; i < 3; ++i) points[static_cast<std::size_t>(i)] = {rng.uniform(), rng.uniform(), 0.0};
    points[3] = {rng.uniform(), rng.uniform(), rng.uniform(0.5, 1.0)};
  } while (!well_spread(points) || !well_spread({points[0], points[1], points[2]}));

  std::vector<MetricSpace> spaces(3, MetricSpace::euclidean_circle(2));
  spaces.push_back(MetricSpace::se3());
  std::vector<AgentState> states;
  for (int i = 0; i < 3; ++i) {
    states.push_back(AgentState::with_angle(points[static_cast<std::size_t>(i)], rng.uniform(0.0, 2.0 * std::numbers::pi)));
  }
  states.push_back(AgentState::with_rotation(points[3], random_rotation(rng)));
  return Framework(complete_graph(SensingGraph(4, {}, GraphKind::directed)), std::move(spaces), std::move(states));
}

std::pair<SensingGraph, SensingGraph> split_by_head(const SensingGraph& g, const std::vector<bool>& first) {
  if (first.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw ValidationError("agent mask size does not match the graph");
  }
  std::vector<Edge> a;
  std::vector<Edge> b;
  for (const Edge& e : g.edges()) (first[static_cast<std::size_t>(e.head)] ? a : b).push_back(e);
  return {SensingGraph(g.vertex_count(), std::move(a), g.kind()), SensingGraph(g.vertex_count(), std::move(b), g.kind())};
}

}  // namespace brl
