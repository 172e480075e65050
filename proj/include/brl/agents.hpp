/**
 * @file agents.hpp
 * @brief Metric spaces, agent states, frameworks and bearing measurements.
 *
 * Positions and bearings are always 3-vectors; planar spaces keep the third
 * coordinate at zero. Every agent is treated as a rigid body in 3D whose
 * orientation is the identity (R^d), a rotation about a fixed axis
 * (R^d x S^1) or a free rotation (SE(3)).
 */
#pragma once

#include "brl/graph.hpp"
#include "brl/numeric.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace brl {

enum class SpaceTag { rd, rd_s1, se3 };

class MetricSpace {
 public:
  static MetricSpace euclidean(int d);
  /// For d == 2 the axis is fixed to e3 and `axis` is ignored.
  static MetricSpace euclidean_circle(int d, const Eigen::Vector3d& axis = Eigen::Vector3d::UnitZ());
  static MetricSpace se3();

  [[nodiscard]] SpaceTag tag() const { return tag_; }
  /// Translational dimension (2 or 3).
  [[nodiscard]] int dim() const { return d_; }
  [[nodiscard]] const Eigen::Vector3d& axis() const { return axis_; }
  /// Controllable dofs per agent: d, d+1 or 6.
  [[nodiscard]] int controllable_dofs() const;
  /// Rotational dofs per agent: 0, 1 or 3.
  [[nodiscard]] int rotational_dofs() const;
  /// Agent rotation directions V: 0, [0 0 axis] or I_3.
  [[nodiscard]] Eigen::Matrix3d rotation_directions() const;
  [[nodiscard]] bool planar() const { return d_ == 2; }
  /// "R2", "R3", "R2xS1", "R3xS1" or "SE3".
  [[nodiscard]] std::string name() const;

  friend bool operator==(const MetricSpace& a, const MetricSpace& b) {
    return a.tag_ == b.tag_ && a.d_ == b.d_ && a.axis_ == b.axis_;
  }

 private:
  MetricSpace(SpaceTag tag, int d, const Eigen::Vector3d& axis) : tag_(tag), d_(d), axis_(axis) {}

  SpaceTag tag_;
  int d_;
  Eigen::Vector3d axis_;
};

struct AgentState {
  Eigen::Vector3d p = Eigen::Vector3d::Zero();
  double alpha = 0.0;                              // R^d x S^1 only, in [0, 2pi)
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();  // SE(3) only

  static AgentState at(const Eigen::Vector3d& p) { return {p, 0.0, Eigen::Matrix3d::Identity()}; }
  static AgentState with_angle(const Eigen::Vector3d& p, double alpha);
  static AgentState with_rotation(const Eigen::Vector3d& p, const Eigen::Matrix3d& R) { return {p, 0.0, R}; }
};

double wrap_angle(double alpha);

/// Orientation of an agent in `space`: I, R(alpha, axis) or R.
Eigen::Matrix3d agent_rotation(const MetricSpace& space, const AgentState& state);

/// A sensing graph plus a configuration. Homogeneous frameworks share one
/// MetricSpace; heterogeneous ones carry one per agent.
///
/// Invariants checked at construction: n >= 3, graph kind matches the space
/// (undirected/oriented for homogeneous R^d, directed otherwise), distinct
/// positions, orthonormal SE(3) rotations. Planar agents have z forced to 0
/// and angles are wrapped into [0, 2pi).
class Framework {
 public:
  Framework(SensingGraph graph, const MetricSpace& space, std::vector<AgentState> states);
  Framework(SensingGraph graph, std::vector<MetricSpace> spaces, std::vector<AgentState> states);

  [[nodiscard]] const SensingGraph& graph() const { return graph_; }
  [[nodiscard]] int agent_count() const { return static_cast<int>(states_.size()); }
  [[nodiscard]] int edge_count() const { return graph_.edge_count(); }
  [[nodiscard]] bool homogeneous() const { return homogeneous_; }
  /// Throws ValidationError for heterogeneous frameworks.
  [[nodiscard]] const MetricSpace& space() const;
  [[nodiscard]] const MetricSpace& space(int agent) const { return spaces_.at(static_cast<std::size_t>(agent)); }
  [[nodiscard]] std::span<const MetricSpace> spaces() const { return spaces_; }
  [[nodiscard]] std::span<const AgentState> states() const { return states_; }
  [[nodiscard]] const AgentState& state(int agent) const { return states_.at(static_cast<std::size_t>(agent)); }
  [[nodiscard]] Eigen::Matrix3d rotation(int agent) const { return agent_rotation(space(agent), state(agent)); }
  /// Stacked positions, 3n.
  [[nodiscard]] Eigen::VectorXd positions() const;
  /// Homogeneous R^2 or R^2 x S^1.
  [[nodiscard]] bool purely_planar() const;
  /// Description such as "SE3" or "hetero[R2xS1,R2xS1,R2xS1,SE3]".
  [[nodiscard]] std::string space_name() const;

  /// Same configuration, different graph (of compatible kind).
  [[nodiscard]] Framework with_graph(SensingGraph graph) const;
  [[nodiscard]] Framework with_states(std::vector<AgentState> states) const;

 private:
  void validate();

  SensingGraph graph_;
  std::vector<MetricSpace> spaces_;
  std::vector<AgentState> states_;
  bool homogeneous_ = true;
};

/// Graph whose edges index bearings: undirected graphs get oriented (i < j).
SensingGraph bearing_graph(const Framework& fw);

struct BearingStack {
  std::vector<Eigen::Vector3d> b;  // canonical edge order of bearing_graph()
};

/// b = R_i^T (p_j - p_i) / |p_j - p_i| for edge k = (i, j).
Eigen::Vector3d bearing_measurement(const Framework& fw, int edge);
BearingStack bearing_rigidity_function(const Framework& fw);

struct DegeneracyReport {
  bool non_degenerate = true;
  /// Collinearity direction (unit) when degenerate.
  Eigen::Vector3d direction = Eigen::Vector3d::Zero();
};

/// Non-degenerate iff the centered n x 3 position matrix has rank >= 2.
DegeneracyReport is_non_degenerate(const Framework& fw, const TolerancePolicy& pol = {});

/// True iff every bearing is a multiple of one common direction.
bool bearings_collinear(const BearingStack& bs, const TolerancePolicy& pol = {});

}  // namespace brl
