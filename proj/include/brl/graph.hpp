/**
 * @file graph.hpp
 * @brief Sensing graphs and the incidence matrices rigidity matrices are
 * assembled from.
 *
 * Vertices are 0-based in the C++ API. File formats use 1-based indices and
 * convert at the boundary (see io.hpp).
 */
#pragma once

#include <Eigen/Dense>

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace brl {

enum class GraphKind { undirected, directed, oriented };

std::string_view to_string(GraphKind kind);
GraphKind graph_kind_from_string(std::string_view name);

struct Edge {
  int head = 0;
  int tail = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Vertex/edge structure with a canonical (lexicographic) edge order.
///
/// Undirected edges are stored as (min, max). Construction rejects
/// self-loops, out-of-range vertices and duplicates; for undirected and
/// oriented graphs a reversed pair counts as a duplicate.
class SensingGraph {
 public:
  SensingGraph(int vertex_count, std::vector<Edge> edges, GraphKind kind);

  [[nodiscard]] int vertex_count() const { return n_; }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] GraphKind kind() const { return kind_; }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] const Edge& edge(int k) const { return edges_.at(static_cast<std::size_t>(k)); }

  /// Exact (head, tail) lookup; for undirected graphs the order is ignored.
  [[nodiscard]] bool has_edge(int head, int tail) const;
  /// Index of the edge in canonical order, or -1.
  [[nodiscard]] int edge_index(int head, int tail) const;

  [[nodiscard]] int weak_component_count() const;
  [[nodiscard]] bool is_connected() const { return weak_component_count() == 1; }

  friend bool operator==(const SensingGraph&, const SensingGraph&) = default;

 private:
  int n_;
  std::vector<Edge> edges_;
  GraphKind kind_;
};

/// Same vertex set, every pair joined: n(n-1)/2 edges for
/// undirected/oriented input (oriented as i < j), n(n-1) for directed.
SensingGraph complete_graph(const SensingGraph& g);

/// Assigns each undirected edge the direction (i, j) with i < j.
/// Throws ValidationError unless `g` is undirected.
SensingGraph orient(const SensingGraph& g);

/// Undirected graphs pass through orient(); other kinds are returned as-is.
SensingGraph as_oriented(const SensingGraph& g);

/// Copy of `g` with extra edges (normalized and re-sorted).
SensingGraph with_edges(const SensingGraph& g, std::span<const Edge> extra);

struct IncidenceMatrices {
  Eigen::MatrixXd E;         // n x m, -1 at the head (outgoing), +1 at the tail
  Eigen::MatrixXd E_out;     // n x m, only the -1 entries of E
  Eigen::MatrixXd Ebar;      // E (x) I_d
  Eigen::MatrixXd Ebar_out;  // E_out (x) I_d
  int d = 1;
};

/// Column k corresponds to edge k in canonical order. Throws
/// ValidationError for undirected graphs (orient first) or d < 1.
IncidenceMatrices incidence_matrices(const SensingGraph& g, int d);

}  // namespace brl
