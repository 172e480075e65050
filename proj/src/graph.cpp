#include "brl/graph.hpp"

#include "brl/error.hpp"
#include "brl/numeric.hpp"

#include <algorithm>
#include <numeric>

namespace brl {

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::undirected: return "undirected";
    case GraphKind::directed: return "directed";
    case GraphKind::oriented: return "oriented";
  }
  return "unknown";
}

GraphKind graph_kind_from_string(std::string_view name) {
  if (name == "undirected") return GraphKind::undirected;
  if (name == "directed") return GraphKind::directed;
  if (name == "oriented") return GraphKind::oriented;
  throw ValidationError("unknown graph kind '" + std::string(name) + "'");
}

SensingGraph::SensingGraph(int vertex_count, std::vector<Edge> edges, GraphKind kind)
    : n_(vertex_count), edges_(std::move(edges)), kind_(kind) {
  if (n_ < 2) {
    throw ValidationError("graph needs at least 2 vertices, got " + std::to_string(n_));
  }
  for (Edge& e : edges_) {
    if (e.head < 0 || e.head >= n_ || e.tail < 0 || e.tail >= n_) {
      throw ValidationError("edge (" + std::to_string(e.head + 1) + "," + std::to_string(e.tail + 1) +
                            ") references a vertex outside [1, " + std::to_string(n_) + "]");
    }
    if (e.head == e.tail) {
      throw ValidationError("self-loop at vertex " + std::to_string(e.head + 1));
    }
    if (kind_ == GraphKind::undirected && e.head > e.tail) std::swap(e.head, e.tail);
  }
  std::sort(edges_.begin(), edges_.end());

  // Duplicate detection up to reversal for undirected/oriented graphs.
  std::vector<Edge> keys = edges_;
  if (kind_ != GraphKind::directed) {
    for (Edge& e : keys) {
      if (e.head > e.tail) std::swap(e.head, e.tail);
    }
    std::sort(keys.begin(), keys.end());
  }
  auto dup = std::adjacent_find(keys.begin(), keys.end());
  if (dup != keys.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->head + 1) + "," +
                          std::to_string(dup->tail + 1) + ")");
  }
}

int SensingGraph::edge_index(int head, int tail) const {
  Edge key{head, tail};
  if (kind_ == GraphKind::undirected && key.head > key.tail) std::swap(key.head, key.tail);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it == edges_.end() || *it != key) return -1;
  return static_cast<int>(it - edges_.begin());
}

bool SensingGraph::has_edge(int head, int tail) const { return edge_index(head, tail) >= 0; }

int SensingGraph::weak_component_count() const {
  std::vector<int> parent(static_cast<std::size_t>(n_));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  int components = n_;
  for (const Edge& e : edges_) {
    int a = find(e.head);
    int b = find(e.tail);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components;
}

SensingGraph complete_graph(const SensingGraph& g) {
  const int n = g.vertex_count();
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (g.kind() != GraphKind::directed && j < i) continue;
      edges.push_back({i, j});
    }
  }
  return SensingGraph(n, std::move(edges), g.kind());
}

SensingGraph orient(const SensingGraph& g) {
  if (g.kind() != GraphKind::undirected) {
    throw ValidationError("orient() expects an undirected graph, got " + std::string(to_string(g.kind())));
  }
  // Undirected edges are already stored with head < tail.
  return SensingGraph(g.vertex_count(), {g.edges().begin(), g.edges().end()}, GraphKind::oriented);
}

SensingGraph as_oriented(const SensingGraph& g) {
  return g.kind() == GraphKind::undirected ? orient(g) : g;
}

SensingGraph with_edges(const SensingGraph& g, std::span<const Edge> extra) {
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.insert(edges.end(), extra.begin(), extra.end());
  return SensingGraph(g.vertex_count(), std::move(edges), g.kind());
}

IncidenceMatrices incidence_matrices(const SensingGraph& g, int d) {
  if (g.kind() == GraphKind::undirected) {
    throw ValidationError("incidence matrices need a directed or oriented graph; orient() it first");
  }
  if (d < 1) throw ValidationError("block dimension must be >= 1");

  const int n = g.vertex_count();
  const int m = g.edge_count();
  IncidenceMatrices out;
  out.d = d;
  out.E = Eigen::MatrixXd::Zero(n, m);
  out.E_out = Eigen::MatrixXd::Zero(n, m);
  for (int k = 0; k < m; ++k) {
    const Edge& e = g.edge(k);
    out.E(e.head, k) = -1.0;
    out.E(e.tail, k) = 1.0;
    out.E_out(e.head, k) = -1.0;
  }
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
  out.Ebar = kron(out.E, I);
  out.Ebar_out = kron(out.E_out, I);
  return out;
}

}  // namespace brl
