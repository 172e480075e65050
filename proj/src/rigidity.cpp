#include "brl/rigidity.hpp"

#include "brl/error.hpp"
#include "brl/random.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace brl {

namespace {

Eigen::MatrixXd rotation_in_space(const MetricSpace& space, const AgentState& s) {
  const int d = space.dim();
  switch (space.tag()) {
    case SpaceTag::rd: return Eigen::MatrixXd::Identity(d, d);
    case SpaceTag::rd_s1:
      if (d == 2) return rotation_2d(s.alpha);
      return rotation_axis_angle(s.alpha, space.axis());
    case SpaceTag::se3: return s.R;
  }
  return Eigen::MatrixXd::Identity(d, d);
}

struct EdgeGeometry {
  Eigen::Vector3d pbar;
  double inv_dist;
};

EdgeGeometry edge_geometry(const Framework& fw, const Edge& e) {
  const Eigen::Vector3d rel = fw.state(e.tail).p - fw.state(e.head).p;
  const double dist = rel.norm();
  if (!std::isfinite(dist)) throw NumericalError("relative position overflows");
  if (!(dist > 0.0)) {
    throw ValidationError("coincident agents " + std::to_string(e.head + 1) + " and " + std::to_string(e.tail + 1));
  }
  return {rel / dist, 1.0 / dist};
}

Eigen::Matrix3d planar_padded_projector(const Eigen::Vector3d& pbar) {
  Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
  p.topLeftCorner<2, 2>() = orthogonal_projector(Eigen::VectorXd(pbar.head<2>()));
  return p;
}

/// Unified rotational columns that carry a controllable dof (nonzero
/// columns of V).
std::vector<int> rotation_slots(const MetricSpace& space) {
  switch (space.tag()) {
    case SpaceTag::rd: return {};
    case SpaceTag::rd_s1: return {2};
    case SpaceTag::se3: return {0, 1, 2};
  }
  return {};
}

std::vector<Eigen::Index> zero_column_indices(const Eigen::MatrixXd& m) {
  std::vector<Eigen::Index> out;
  const double scale = std::max(1.0, m.norm());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (m.col(c).norm() <= 1e-14 * scale) out.push_back(c);
  }
  return out;
}

Framework complete_version(const Framework& fw) { return fw.with_graph(complete_graph(fw.graph())); }

RigidityMatrix matrix_for(const Framework& fw, Representation rep) {
  return rep == Representation::unified ? unified_rigidity_matrix(fw) : rigidity_matrix(fw);
}

struct LabeledVector {
  VariationLabel label;
  Eigen::VectorXd v;
};

/// Orders the basis of span(q) so that the candidates lying in it come
/// first, each labeled; the remainder is marked unlabeled.
SubspaceBasis label_subspace(const Eigen::MatrixXd& q, const std::vector<LabeledVector>& candidates,
                             const TolerancePolicy& pol) {
  SubspaceBasis out;
  out.ambient_dim = q.rows();
  Eigen::MatrixXd labeled(q.rows(), 0);
  for (const LabeledVector& c : candidates) {
    const double norm = c.v.norm();
    if (!(norm > 0.0)) continue;
    const Eigen::VectorXd u = c.v / norm;
    if (residual_outside(u, q) >= pol.subspace_tol) continue;
    Eigen::VectorXd w = u;
    if (labeled.cols() > 0) w -= labeled * (labeled.transpose() * w);
    if (w.norm() < 1e-6) continue;  // dependent on earlier generators
    labeled.conservativeResize(Eigen::NoChange, labeled.cols() + 1);
    labeled.col(labeled.cols() - 1) = w.normalized();
    out.labels.push_back(c.label);
  }
  Eigen::MatrixXd rest = q;
  if (labeled.cols() > 0) rest -= labeled * (labeled.transpose() * q);
  Eigen::MatrixXd extra(q.rows(), 0);
  const Eigen::Index missing = q.cols() - labeled.cols();
  if (missing > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rest, Eigen::ComputeThinU);
    extra = svd.matrixU().leftCols(missing);
  }
  out.basis.resize(q.rows(), labeled.cols() + extra.cols());
  out.basis << labeled, extra;
  out.labels.resize(static_cast<std::size_t>(out.basis.cols()), VariationLabel::unlabeled);
  return out;
}

VariationLabel rotation_label(const Eigen::Vector3d& axis) {
  if (axis.isApprox(Eigen::Vector3d::UnitX())) return VariationLabel::coord_rotation_x;
  if (axis.isApprox(Eigen::Vector3d::UnitY())) return VariationLabel::coord_rotation_y;
  if (axis.isApprox(Eigen::Vector3d::UnitZ())) return VariationLabel::coord_rotation_z;
  return VariationLabel::coord_rotation_axis;
}

/// Translation, scaling and coordinated-rotation generators in unified
/// coordinates, restricted to what each agent can actuate.
std::vector<LabeledVector> unified_candidates(const Framework& fw) {
  const int n = fw.agent_count();
  const Eigen::Index cols = 6 * n;
  std::vector<LabeledVector> out;
  const VariationLabel translations[] = {VariationLabel::translation_x, VariationLabel::translation_y,
                                         VariationLabel::translation_z};
  for (int a = 0; a < 3; ++a) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(cols);
    for (int i = 0; i < n; ++i) v(3 * i + a) = 1.0;
    out.push_back({translations[a], v});
  }
  Eigen::VectorXd scaling = Eigen::VectorXd::Zero(cols);
  scaling.head(3 * n) = fw.positions();
  out.push_back({VariationLabel::scaling, scaling});

  std::vector<Eigen::Vector3d> axes = {Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()};
  for (const MetricSpace& s : fw.spaces()) {
    if (s.tag() == SpaceTag::rd_s1 && rotation_label(s.axis()) == VariationLabel::coord_rotation_axis &&
        std::none_of(axes.begin(), axes.end(), [&](const Eigen::Vector3d& a) { return a.isApprox(s.axis()); })) {
      axes.push_back(s.axis());
    }
  }
  for (const Eigen::Vector3d& u : axes) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(cols);
    for (int i = 0; i < n; ++i) {
      v.segment<3>(3 * i) = u.cross(fw.state(i).p);
      v.segment<3>(3 * n + 3 * i) = fw.space(i).rotation_directions().transpose() * u;
    }
    out.push_back({rotation_label(u), mask_unified_variation(fw, v)});
  }
  for (LabeledVector& c : out) c.v = mask_unified_variation(fw, c.v);
  return out;
}

RigidityVerdict verdict_impl(const Framework& fw, const TolerancePolicy& pol, Representation rep) {
  const RigidityMatrix bg = matrix_for(fw, rep);
  const RigidityMatrix bk = matrix_for(complete_version(fw), rep);
  const RankNullspace g = rank_and_nullspace(bg.M, pol);
  const RankNullspace k = rank_and_nullspace(bk.M, pol);

  RigidityVerdict v;
  v.representation = rep;
  v.columns = static_cast<int>(bg.M.cols());
  v.rank = g.rank;
  v.nullity = v.columns - g.rank;
  v.complete_rank = k.rank;

  const SubspaceRelation rel = subspace_relation(k.null_basis, g.null_basis, pol);
  v.kernel_equal_to_complete = rel == SubspaceRelation::equal;
  v.kernel_inclusion_holds = rel == SubspaceRelation::equal || rel == SubspaceRelation::a_subset_b;
  v.classification = v.kernel_equal_to_complete ? Classification::ibr : Classification::ibf;

  v.degenerate = !is_non_degenerate(fw, pol).non_degenerate;
  if (v.degenerate) v.notes.emplace_back("degenerate (collinear) configuration: kernel-equality test only");
  if (!fw.graph().is_connected()) v.notes.emplace_back("sensing graph is disconnected");
  if (!v.kernel_inclusion_holds) {
    v.notes.emplace_back("kernel of the complete graph is not contained in the kernel of the sensing graph");
  }

  if (fw.homogeneous() && !v.degenerate) {
    const int c = fw.space().controllable_dofs();
    const int n = fw.agent_count();
    v.expected_rank = c * n - c - 1;
    v.rank_test = v.rank == *v.expected_rank;
    v.criteria_agree = *v.rank_test == v.kernel_equal_to_complete;
    if (!v.criteria_agree) v.notes.emplace_back("rank test and kernel-equality test disagree");
  }

  const bool euclidean = fw.homogeneous() && fw.space().tag() == SpaceTag::rd;
  if (v.classification == Classification::ibr) {
    v.implied = {"GBR", "BR"};
  } else if (euclidean) {
    v.implied = {"not GBR", "not BR"};
  } else {
    v.implied = {"not GBR"};
  }
  return v;
}

}  // namespace

std::string_view to_string(Representation r) {
  return r == Representation::unified ? "unified" : "per_space";
}

std::string_view to_string(Classification c) { return c == Classification::ibr ? "IBR" : "IBF"; }

std::string_view to_string(VariationLabel label) {
  switch (label) {
    case VariationLabel::translation_x: return "translation_x";
    case VariationLabel::translation_y: return "translation_y";
    case VariationLabel::translation_z: return "translation_z";
    case VariationLabel::scaling: return "scaling";
    case VariationLabel::coord_rotation_x: return "coord_rotation_x";
    case VariationLabel::coord_rotation_y: return "coord_rotation_y";
    case VariationLabel::coord_rotation_z: return "coord_rotation_z";
    case VariationLabel::coord_rotation_axis: return "coord_rotation_axis";
    case VariationLabel::virtual_variation: return "virtual";
    case VariationLabel::unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

RigidityMatrix rigidity_matrix(const Framework& fw) {
  const MetricSpace& space = fw.space();
  const int n = fw.agent_count();
  const int d = space.dim();
  const int rot = space.rotational_dofs();
  const SensingGraph g = bearing_graph(fw);
  const int m = g.edge_count();

  RigidityMatrix out;
  out.representation = Representation::per_space;
  out.M = Eigen::MatrixXd::Zero(d * m, (d + rot) * n);
  for (int i = 0; i < n; ++i) out.col_blocks.push_back({d * i, d, d * n + rot * i, rot});

  for (int k = 0; k < m; ++k) {
    const Edge& e = g.edge(k);
    out.row_blocks.push_back({e, d * k, d});
    const EdgeGeometry geo = edge_geometry(fw, e);
    const Eigen::VectorXd pbar = geo.pbar.head(d);
    const Eigen::MatrixXd Ri = rotation_in_space(space, fw.state(e.head));

    const Eigen::MatrixXd translational = geo.inv_dist * Ri.transpose() * orthogonal_projector(pbar);
    out.M.block(d * k, d * e.tail, d, d) += translational;
    out.M.block(d * k, d * e.head, d, d) -= translational;

    const Eigen::Index rot_col = d * n + rot * e.head;
    switch (space.tag()) {
      case SpaceTag::rd: break;
      case SpaceTag::rd_s1:
        if (d == 2) {
          // d/dalpha R(alpha)^T = -R(pi/2) R(alpha)^T
          const Eigen::Vector2d perp = rotation_2d(std::numbers::pi / 2) * pbar;
          out.M.block(d * k, rot_col, 2, 1) = -Ri.transpose() * perp;
        } else {
          out.M.block(d * k, rot_col, 3, 1) = Ri.transpose() * skew(geo.pbar) * space.axis();
        }
        break;
      case SpaceTag::se3:
        out.M.block(3 * k, rot_col, 3, 3) = Ri.transpose() * skew(geo.pbar);
        break;
    }
  }
  return out;
}

RigidityMatrix unified_rigidity_matrix(const Framework& fw) {
  const int n = fw.agent_count();
  const SensingGraph g = bearing_graph(fw);
  const int m = g.edge_count();
  const bool planar = fw.purely_planar();
  const IncidenceMatrices inc = incidence_matrices(g, 3);

  Eigen::MatrixXd Dp = Eigen::MatrixXd::Zero(3 * m, 3 * m);
  Eigen::MatrixXd Do = Eigen::MatrixXd::Zero(3 * m, 3 * m);
  RigidityMatrix out;
  out.representation = Representation::unified;
  for (int k = 0; k < m; ++k) {
    const Edge& e = g.edge(k);
    out.row_blocks.push_back({e, 3 * k, 3});
    const EdgeGeometry geo = edge_geometry(fw, e);
    const Eigen::Matrix3d Ri = fw.rotation(e.head);
    const Eigen::Matrix3d P = planar ? planar_padded_projector(geo.pbar) : orthogonal_projector(geo.pbar);
    Dp.block<3, 3>(3 * k, 3 * k) = geo.inv_dist * Ri.transpose() * P;
    Do.block<3, 3>(3 * k, 3 * k) = -Ri.transpose() * skew(geo.pbar) * fw.space(e.head).rotation_directions();
  }
  out.M.resize(3 * m, 6 * n);
  out.M << Dp * inc.Ebar.transpose(), Do * inc.Ebar_out.transpose();
  for (int i = 0; i < n; ++i) out.col_blocks.push_back({3 * i, 3, 3 * n + 3 * i, 3});
  return out;
}

RigidityMatrix analysis_matrix(const Framework& fw) {
  return fw.homogeneous() ? rigidity_matrix(fw) : unified_rigidity_matrix(fw);
}

std::vector<Eigen::Index> controllable_columns(const Framework& fw) {
  const int n = fw.agent_count();
  std::vector<Eigen::Index> out;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < fw.space(i).dim(); ++a) out.push_back(3 * i + a);
  }
  for (int i = 0; i < n; ++i) {
    for (int slot : rotation_slots(fw.space(i))) out.push_back(3 * n + 3 * i + slot);
  }
  return out;
}

Eigen::VectorXd mask_unified_variation(const Framework& fw, const Eigen::VectorXd& delta) {
  const int n = fw.agent_count();
  if (delta.size() != 6 * n) throw ValidationError("unified variation must have 6n entries");
  Eigen::VectorXd out = delta;
  for (int i = 0; i < n; ++i) {
    if (fw.purely_planar()) out(3 * i + 2) = 0.0;
    Eigen::Vector3d keep = Eigen::Vector3d::Zero();
    for (int slot : rotation_slots(fw.space(i))) keep(slot) = 1.0;
    out.segment<3>(3 * n + 3 * i) = out.segment<3>(3 * n + 3 * i).cwiseProduct(keep);
  }
  return out;
}

namespace {

// Ground agents in a heterogeneous framework keep z = 0, so a finite step
// can only move them in the plane.
Eigen::VectorXd actuated_unified_variation(const Framework& fw, const Eigen::VectorXd& delta) {
  Eigen::VectorXd out = mask_unified_variation(fw, delta);
  for (int i = 0; i < fw.agent_count(); ++i) {
    if (fw.space(i).planar()) out(3 * i + 2) = 0.0;
  }
  return out;
}

}  // namespace

Framework apply_variation(const Framework& fw, const Eigen::VectorXd& delta, double h, Representation rep) {
  const int n = fw.agent_count();
  std::vector<AgentState> states(fw.states().begin(), fw.states().end());

  auto rotate_world = [&](AgentState& s, const Eigen::Vector3d& omega) {
    const double angle = h * omega.norm();
    if (angle > 0.0) s.R = rotation_axis_angle(angle, omega.normalized()) * s.R;
  };

  if (rep == Representation::per_space) {
    const MetricSpace& space = fw.space();
    const int d = space.dim();
    const int rot = space.rotational_dofs();
    if (delta.size() != (d + rot) * n) throw ValidationError("variation size does not match the per-space matrix");
    for (int i = 0; i < n; ++i) {
      AgentState& s = states[static_cast<std::size_t>(i)];
      s.p.head(d) += h * delta.segment(d * i, d);
      if (space.tag() == SpaceTag::rd_s1) s.alpha += h * delta(d * n + i);
      if (space.tag() == SpaceTag::se3) rotate_world(s, delta.segment<3>(3 * n + 3 * i));
    }
  } else {
    const Eigen::VectorXd masked = actuated_unified_variation(fw, delta);
    for (int i = 0; i < n; ++i) {
      AgentState& s = states[static_cast<std::size_t>(i)];
      s.p += h * masked.segment<3>(3 * i);
      const Eigen::Vector3d omega = masked.segment<3>(3 * n + 3 * i);
      switch (fw.space(i).tag()) {
        case SpaceTag::rd: break;
        case SpaceTag::rd_s1: s.alpha += h * omega(2); break;
        case SpaceTag::se3: rotate_world(s, omega); break;
      }
    }
  }
  return fw.with_states(std::move(states));
}

double fd_directional_error(const Framework& fw, const Eigen::VectorXd& delta, double h, Representation rep) {
  const RigidityMatrix b = matrix_for(fw, rep);
  const Eigen::VectorXd used = rep == Representation::unified ? actuated_unified_variation(fw, delta) : delta;
  const Eigen::VectorXd analytic = b.M * used;

  const BearingStack before = bearing_rigidity_function(fw);
  const BearingStack after = bearing_rigidity_function(apply_variation(fw, used, h, rep));
  const int rows = rep == Representation::unified ? 3 : fw.space().dim();
  Eigen::VectorXd numeric(analytic.size());
  for (std::size_t k = 0; k < before.b.size(); ++k) {
    const Eigen::Vector3d diff = (after.b[k] - before.b[k]) / h;
    numeric.segment(rows * static_cast<Eigen::Index>(k), rows) = diff.head(rows);
  }
  const double denom = std::max(analytic.norm(), used.norm());
  if (!(denom > 0.0)) return (analytic - numeric).norm();
  return (analytic - numeric).norm() / denom;
}

double fd_jacobian_check(const Framework& fw, int trials, const TolerancePolicy& pol, std::uint64_t seed,
                         Representation rep) {
  const Eigen::Index cols = matrix_for(fw, rep).M.cols();
  Rng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd delta(cols);
    for (Eigen::Index c = 0; c < cols; ++c) delta(c) = rng.normal();
    if (rep == Representation::unified) delta = actuated_unified_variation(fw, delta);
    delta.normalize();
    worst = std::max(worst, fd_directional_error(fw, delta, pol.fd_step, rep));
  }
  return worst;
}

SubspaceBasis trivial_variation_basis(const Framework& fw, const TolerancePolicy& pol) {
  const MetricSpace& space = fw.space();
  if (!is_non_degenerate(fw, pol).non_degenerate) {
    throw ValidationError("trivial variation basis requires a non-degenerate configuration");
  }
  const int n = fw.agent_count();
  const int d = space.dim();
  const int rot = space.rotational_dofs();
  const Eigen::Index cols = (d + rot) * n;

  std::vector<LabeledVector> gens;
  const VariationLabel translations[] = {VariationLabel::translation_x, VariationLabel::translation_y,
                                         VariationLabel::translation_z};
  for (int a = 0; a < d; ++a) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(cols);
    for (int i = 0; i < n; ++i) v(d * i + a) = 1.0;
    gens.push_back({translations[a], v});
  }
  Eigen::VectorXd scaling = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < n; ++i) scaling.segment(d * i, d) = fw.state(i).p.head(d);
  gens.push_back({VariationLabel::scaling, scaling});

  if (space.tag() == SpaceTag::rd_s1) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(cols);
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector3d& p = fw.state(i).p;
      if (d == 2) {
        v.segment(2 * i, 2) = rotation_2d(std::numbers::pi / 2) * p.head<2>();
      } else {
        v.segment(3 * i, 3) = skew(space.axis()) * p;
      }
      v(d * n + i) = 1.0;
    }
    gens.push_back({d == 2 ? VariationLabel::coord_rotation_z : rotation_label(space.axis()), v});
  } else if (space.tag() == SpaceTag::se3) {
    const VariationLabel rotations[] = {VariationLabel::coord_rotation_x, VariationLabel::coord_rotation_y,
                                        VariationLabel::coord_rotation_z};
    for (int h = 0; h < 3; ++h) {
      const Eigen::Vector3d axis = Eigen::Vector3d::Unit(h);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(cols);
      for (int i = 0; i < n; ++i) {
        v.segment(3 * i, 3) = skew(axis) * fw.state(i).p;
        v.segment(3 * n + 3 * i, 3) = axis;
      }
      gens.push_back({rotations[h], v});
    }
  }

  Eigen::MatrixXd raw(cols, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t g = 0; g < gens.size(); ++g) raw.col(static_cast<Eigen::Index>(g)) = gens[g].v;
  // Householder QR keeps the generator order (column j of Q spans the
  // component of generator j orthogonal to the previous ones).
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  SubspaceBasis out;
  out.ambient_dim = cols;
  out.basis = qr.householderQ() * Eigen::MatrixXd::Identity(cols, raw.cols());
  for (const LabeledVector& g : gens) out.labels.push_back(g.label);
  return out;
}

SubspaceBasis virtual_variation_basis(const Framework& fw) {
  const RigidityMatrix u = unified_rigidity_matrix(fw);
  const std::vector<Eigen::Index> zeros = zero_column_indices(u.M);
  SubspaceBasis out;
  out.ambient_dim = u.M.cols();
  out.basis = Eigen::MatrixXd::Zero(u.M.cols(), static_cast<Eigen::Index>(zeros.size()));
  for (std::size_t c = 0; c < zeros.size(); ++c) out.basis(zeros[c], static_cast<Eigen::Index>(c)) = 1.0;
  out.labels.assign(zeros.size(), VariationLabel::virtual_variation);
  return out;
}

RigidityVerdict ibr_verdict(const Framework& fw, const TolerancePolicy& pol) {
  return verdict_impl(fw, pol, fw.homogeneous() ? Representation::per_space : Representation::unified);
}

bool kernel_inclusion_check(const Framework& fw, const TolerancePolicy& pol) {
  const RigidityMatrix bg = analysis_matrix(fw);
  const RigidityMatrix bk = analysis_matrix(complete_version(fw));
  const SubspaceRelation rel =
      subspace_relation(rank_and_nullspace(bk.M, pol).null_basis, rank_and_nullspace(bg.M, pol).null_basis, pol);
  return rel == SubspaceRelation::equal || rel == SubspaceRelation::a_subset_b;
}

namespace {

void require_comparable(const Framework& a, const Framework& b) {
  if (a.agent_count() != b.agent_count()) throw ValidationError("frameworks have different agent counts");
  if (!(a.graph() == b.graph())) throw ValidationError("frameworks have different sensing graphs");
  if (!std::equal(a.spaces().begin(), a.spaces().end(), b.spaces().begin(), b.spaces().end())) {
    throw ValidationError("frameworks live in different metric spaces");
  }
}

bool same_bearings(const Framework& a, const Framework& b, const TolerancePolicy& pol) {
  const BearingStack ba = bearing_rigidity_function(a);
  const BearingStack bb = bearing_rigidity_function(b);
  for (std::size_t k = 0; k < ba.b.size(); ++k) {
    if ((ba.b[k] - bb.b[k]).norm() > pol.subspace_tol) return false;
  }
  return true;
}

}  // namespace

bool bearing_equivalent(const Framework& a, const Framework& b, const TolerancePolicy& pol) {
  require_comparable(a, b);
  return same_bearings(a, b, pol);
}

bool bearing_congruent(const Framework& a, const Framework& b, const TolerancePolicy& pol) {
  require_comparable(a, b);
  return same_bearings(complete_version(a), complete_version(b), pol);
}

HeteroAnalysis hetero_kernel_analysis(const Framework& fw, const TolerancePolicy& pol) {
  HeteroAnalysis out;
  out.verdict = verdict_impl(fw, pol, Representation::unified);

  const RigidityMatrix bk = unified_rigidity_matrix(complete_version(fw));
  const RankNullspace k = rank_and_nullspace(bk.M, pol);
  out.complete_rank = k.rank;
  out.complete_nullity = static_cast<int>(bk.M.cols()) - k.rank;

  out.virtual_ = virtual_variation_basis(fw);
  out.zero_columns = out.virtual_.dim();

  // Ker B_K contains every zero-column direction, so dropping those
  // coordinates leaves exactly Ker B_K intersected with their complement.
  Eigen::MatrixXd kernel = k.null_basis;
  for (Eigen::Index c = 0; c < out.virtual_.basis.cols(); ++c) {
    Eigen::Index row = 0;
    out.virtual_.basis.col(c).maxCoeff(&row);
    kernel.row(row).setZero();
  }
  const Eigen::MatrixXd q = orthonormal_columns(kernel, pol);
  out.trivial = label_subspace(q, unified_candidates(fw), pol);
  if (out.complete_nullity != out.trivial.dim() + out.virtual_.dim()) {
    out.verdict.notes.emplace_back("complete-graph nullity differs from dim S_t + dim S_v");
  }
  return out;
}

int degenerate_trivial_dim(const MetricSpace& space, int n, bool collinear_axis_equals_rotation_axis) {
  if (n < 3) throw ValidationError("degenerate formations need n >= 3");
  const int d = space.dim();
  switch (space.tag()) {
    case SpaceTag::rd: return n + d - 1;
    case SpaceTag::rd_s1:
      if (d == 2 && collinear_axis_equals_rotation_axis) {
        throw ValidationError("the rotation-axis alignment case only exists for R^3 x S^1");
      }
      return collinear_axis_equals_rotation_axis ? 2 * n + d - 1 : n + d;
    case SpaceTag::se3: return 2 * n + 4;
  }
  return 0;
}

Eigen::MatrixXd reduced_complete_matrix(const Framework& fw) {
  const MetricSpace& space = fw.space();
  if (space.tag() != SpaceTag::rd) throw ValidationError("reduced complete matrix is defined for R^d only");
  const int n = fw.agent_count();
  const int d = space.dim();
  const int per_pair = d - 1;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(per_pair * n * (n - 1) / 2, d * n);
  Eigen::Index row = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::Vector3d p = fw.state(j).p - fw.state(i).p;
      std::vector<Eigen::VectorXd> dirs;
      if (d == 2) {
        dirs.push_back(Eigen::Vector2d(p.y(), -p.x()));
      } else {
        Eigen::Index least = 0;
        p.cwiseAbs().minCoeff(&least);
        const Eigen::Vector3d u1 = p.cross(Eigen::Vector3d::Unit(least)).normalized();
        dirs.push_back(u1);
        dirs.push_back(p.normalized().cross(u1));
      }
      for (const Eigen::VectorXd& r : dirs) {
        b.block(row, d * i, 1, d) = -r.transpose();
        b.block(row, d * j, 1, d) = r.transpose();
        ++row;
      }
    }
  }
  return b;
}

}  // namespace brl
