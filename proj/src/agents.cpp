#include "brl/agents.hpp"

#include "brl/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace brl {

MetricSpace MetricSpace::euclidean(int d) {
  if (d != 2 && d != 3) throw ValidationError("R^d needs d in {2, 3}");
  return MetricSpace(SpaceTag::rd, d, Eigen::Vector3d::Zero());
}

MetricSpace MetricSpace::euclidean_circle(int d, const Eigen::Vector3d& axis) {
  if (d == 2) return MetricSpace(SpaceTag::rd_s1, 2, Eigen::Vector3d::UnitZ());
  if (d != 3) throw ValidationError("R^d x S^1 needs d in {2, 3}");
  if (std::abs(axis.norm() - 1.0) > 1e-9) throw ValidationError("R^3 x S^1 rotation axis must be a unit vector");
  return MetricSpace(SpaceTag::rd_s1, 3, axis.normalized());
}

MetricSpace MetricSpace::se3() { return MetricSpace(SpaceTag::se3, 3, Eigen::Vector3d::Zero()); }

int MetricSpace::controllable_dofs() const { return d_ + rotational_dofs(); }

int MetricSpace::rotational_dofs() const {
  switch (tag_) {
    case SpaceTag::rd: return 0;
    case SpaceTag::rd_s1: return 1;
    case SpaceTag::se3: return 3;
  }
  return 0;
}

Eigen::Matrix3d MetricSpace::rotation_directions() const {
  Eigen::Matrix3d v = Eigen::Matrix3d::Zero();
  switch (tag_) {
    case SpaceTag::rd: break;
    case SpaceTag::rd_s1: v.col(2) = axis_; break;
    case SpaceTag::se3: v.setIdentity(); break;
  }
  return v;
}

std::string MetricSpace::name() const {
  switch (tag_) {
    case SpaceTag::rd: return "R" + std::to_string(d_);
    case SpaceTag::rd_s1: return "R" + std::to_string(d_) + "xS1";
    case SpaceTag::se3: return "SE3";
  }
  return "?";
}

double wrap_angle(double alpha) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(alpha, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

AgentState AgentState::with_angle(const Eigen::Vector3d& p, double alpha) {
  return {p, wrap_angle(alpha), Eigen::Matrix3d::Identity()};
}

Eigen::Matrix3d agent_rotation(const MetricSpace& space, const AgentState& state) {
  switch (space.tag()) {
    case SpaceTag::rd: return Eigen::Matrix3d::Identity();
    case SpaceTag::rd_s1: return rotation_axis_angle(state.alpha, space.axis());
    case SpaceTag::se3: return state.R;
  }
  return Eigen::Matrix3d::Identity();
}

Framework::Framework(SensingGraph graph, const MetricSpace& space, std::vector<AgentState> states)
    : graph_(std::move(graph)),
      spaces_(states.size(), space),
      states_(std::move(states)),
      homogeneous_(true) {
  validate();
}

Framework::Framework(SensingGraph graph, std::vector<MetricSpace> spaces, std::vector<AgentState> states)
    : graph_(std::move(graph)), spaces_(std::move(spaces)), states_(std::move(states)) {
  if (spaces_.size() != states_.size()) {
    throw ValidationError("per-agent space list has " + std::to_string(spaces_.size()) + " entries for " +
                          std::to_string(states_.size()) + " agents");
  }
  homogeneous_ = std::all_of(spaces_.begin(), spaces_.end(), [&](const MetricSpace& s) { return s == spaces_.front(); });
  validate();
}

void Framework::validate() {
  const int n = static_cast<int>(states_.size());
  if (n < 3) throw ValidationError("a framework needs n >= 3 agents, got " + std::to_string(n));
  if (graph_.vertex_count() != n) {
    throw ValidationError("graph has " + std::to_string(graph_.vertex_count()) + " vertices for " +
                          std::to_string(n) + " agents");
  }
  const bool euclidean = homogeneous_ && spaces_.front().tag() == SpaceTag::rd;
  if (euclidean && graph_.kind() == GraphKind::directed) {
    throw ValidationError("R^d frameworks use an undirected or oriented graph");
  }
  if (!euclidean && graph_.kind() != GraphKind::directed) {
    throw ValidationError(space_name() + " frameworks need a directed graph");
  }

  for (int i = 0; i < n; ++i) {
    AgentState& s = states_[static_cast<std::size_t>(i)];
    const MetricSpace& space = spaces_[static_cast<std::size_t>(i)];
    if (!s.p.allFinite() || !std::isfinite(s.alpha) || !s.R.allFinite()) {
      throw ValidationError("agent " + std::to_string(i + 1) + " has non-finite state");
    }
    if (space.planar()) s.p.z() = 0.0;
    if (space.tag() == SpaceTag::rd_s1) s.alpha = wrap_angle(s.alpha);
    if (space.tag() == SpaceTag::se3) {
      const double ortho = (s.R.transpose() * s.R - Eigen::Matrix3d::Identity()).norm();
      if (ortho > 1e-9 || std::abs(s.R.determinant() - 1.0) > 1e-9) {
        throw ValidationError("agent " + std::to_string(i + 1) + " rotation is not in SO(3)");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((states_[i].p - states_[j].p).norm() == 0.0) {
        throw ValidationError("agents " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                              " share a position");
      }
    }
  }
}

const MetricSpace& Framework::space() const {
  if (!homogeneous_) throw ValidationError("heterogeneous framework has no single metric space");
  return spaces_.front();
}

Eigen::VectorXd Framework::positions() const {
  Eigen::VectorXd p(3 * agent_count());
  for (int i = 0; i < agent_count(); ++i) p.segment<3>(3 * i) = states_[i].p;
  return p;
}

bool Framework::purely_planar() const { return homogeneous_ && spaces_.front().planar(); }

std::string Framework::space_name() const {
  if (homogeneous_) return spaces_.front().name();
  std::string out = "hetero[";
  for (std::size_t i = 0; i < spaces_.size(); ++i) {
    if (i) out += ",";
    out += spaces_[i].name();
  }
  return out + "]";
}

Framework Framework::with_graph(SensingGraph graph) const {
  if (homogeneous_) return Framework(std::move(graph), spaces_.front(), states_);
  return Framework(std::move(graph), spaces_, states_);
}

Framework Framework::with_states(std::vector<AgentState> states) const {
  if (homogeneous_) return Framework(graph_, spaces_.front(), std::move(states));
  return Framework(graph_, spaces_, std::move(states));
}

SensingGraph bearing_graph(const Framework& fw) { return as_oriented(fw.graph()); }

Eigen::Vector3d bearing_measurement(const Framework& fw, int edge) {
  const Edge& e = fw.graph().edge(edge);
  const Eigen::Vector3d rel = fw.state(e.tail).p - fw.state(e.head).p;
  const double dist = rel.norm();
  if (!std::isfinite(dist)) throw NumericalError("relative position overflows on edge " + std::to_string(edge));
  if (!(dist > 0.0)) throw ValidationError("coincident agents on edge " + std::to_string(edge));
  const Eigen::Vector3d pbar = rel / dist;
  if (fw.space(e.head).tag() == SpaceTag::rd) return pbar;
  return fw.rotation(e.head).transpose() * pbar;
}

BearingStack bearing_rigidity_function(const Framework& fw) {
  // Undirected edges are stored head < tail, so the framework's own edge
  // order already is the oriented order.
  BearingStack out;
  out.b.reserve(static_cast<std::size_t>(fw.edge_count()));
  for (int k = 0; k < fw.edge_count(); ++k) out.b.push_back(bearing_measurement(fw, k));
  return out;
}

DegeneracyReport is_non_degenerate(const Framework& fw, const TolerancePolicy& pol) {
  const int n = fw.agent_count();
  Eigen::MatrixXd x(n, 3);
  for (int i = 0; i < n; ++i) x.row(i) = fw.state(i).p.transpose();
  const Eigen::RowVector3d mean = x.colwise().mean();
  x.rowwise() -= mean;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = pol.effective_rank_rtol(x.rows(), x.cols()) * s(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  DegeneracyReport report;
  report.non_degenerate = rank >= 2;
  if (!report.non_degenerate) {
    Eigen::Vector3d v = svd.matrixV().col(0);
    // Sign convention: first non-negligible component positive.
    for (int c = 0; c < 3; ++c) {
      if (std::abs(v(c)) > 1e-12) {
        if (v(c) < 0) v = -v;
        break;
      }
    }
    report.direction = v;
  }
  return report;
}

bool bearings_collinear(const BearingStack& bs, const TolerancePolicy& pol) {
  if (bs.b.size() <= 1) return true;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(bs.b.size()), 3);
  for (std::size_t k = 0; k < bs.b.size(); ++k) m.row(static_cast<Eigen::Index>(k)) = bs.b[k].transpose();
  return numerical_rank(m, pol) <= 1;
}

}  // namespace brl
