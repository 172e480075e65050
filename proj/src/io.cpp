#include "brl/io.hpp"

#include "brl/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace brl {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Eigen::Vector3d vector3_from_json(const json& j, bool allow_2d) {
  if (!j.is_array() || !(j.size() == 3 || (allow_2d && j.size() == 2))) {
    throw ParseError("expected a 3-vector" + std::string(allow_2d ? " (or 2-vector)" : ""));
  }
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  for (std::size_t c = 0; c < j.size(); ++c) v(static_cast<Eigen::Index>(c)) = j[c].get<double>();
  return v;
}

json vector3_to_json(const Eigen::Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SensingGraph graph_from_json(const json& j) {
  return guarded("graph", [&] {
    const int n = require(j, "n").get<int>();
    const GraphKind kind = graph_kind_from_string(require(j, "kind").get<std::string>());
    std::vector<Edge> edges;
    for (const json& e : require(j, "edges")) {
      if (!e.is_array() || e.size() != 2) throw ParseError("edge must be a pair [i, j]");
      edges.push_back({e[0].get<int>() - 1, e[1].get<int>() - 1});
    }
    return SensingGraph(n, std::move(edges), kind);
  });
}

json graph_to_json(const SensingGraph& g) {
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.head + 1, e.tail + 1});
  return {{"n", g.vertex_count()}, {"kind", std::string(to_string(g.kind()))}, {"edges", edges}};
}

MetricSpace space_from_json(const json& j) {
  return guarded("space", [&] {
    const std::string type = j.is_string() ? j.get<std::string>() : require(j, "type").get<std::string>();
    if (type == "R2") return MetricSpace::euclidean(2);
    if (type == "R3") return MetricSpace::euclidean(3);
    if (type == "R2xS1" || type == "SE2") return MetricSpace::euclidean_circle(2);
    if (type == "R3xS1") {
      if (!j.is_object() || !j.contains("axis")) throw ValidationError("R3xS1 needs a rotation axis");
      return MetricSpace::euclidean_circle(3, vector3_from_json(j.at("axis"), false));
    }
    if (type == "SE3") return MetricSpace::se3();
    throw ValidationError("unknown space type '" + type + "'");
  });
}

json space_to_json(const MetricSpace& s) {
  json out = {{"type", s.name()}};
  if (s.tag() == SpaceTag::rd_s1 && s.dim() == 3) out["axis"] = vector3_to_json(s.axis());
  return out;
}

Framework framework_from_json(const json& j) {
  return guarded("framework", [&] {
    const SensingGraph graph = graph_from_json(require(j, "graph"));
    const json& agents = require(j, "agents");
    if (!agents.is_array()) throw ParseError("'agents' must be an array");

    const json& space_json = require(j, "space");
    std::vector<MetricSpace> spaces;
    if (space_json.is_array()) {
      for (const json& s : space_json) spaces.push_back(space_from_json(s));
      if (spaces.size() != agents.size()) throw ValidationError("per-agent space list length differs from agent count");
    } else {
      spaces.assign(agents.size(), space_from_json(space_json));
    }

    std::vector<AgentState> states;
    for (std::size_t i = 0; i < agents.size(); ++i) {
      const json& a = agents[i];
      const MetricSpace& s = spaces[i];
      AgentState st;
      st.p = vector3_from_json(require(a, "p"), s.planar());
      if (a.contains("alpha")) st.alpha = a.at("alpha").get<double>();
      if (a.contains("R")) {
        const json& r = a.at("R");
        if (!r.is_array() || r.size() != 3) throw ParseError("R must be a 3x3 nested array");
        for (int row = 0; row < 3; ++row) st.R.row(row) = vector3_from_json(r[row], false).transpose();
      } else if (a.contains("axis_angle")) {
        const json& aa = a.at("axis_angle");
        st.R = rotation_axis_angle(require(aa, "angle").get<double>(), vector3_from_json(require(aa, "axis"), false));
      }
      states.push_back(st);
    }
    if (space_json.is_array()) return Framework(graph, std::move(spaces), std::move(states));
    if (spaces.empty()) throw ValidationError("framework has no agents");
    return Framework(graph, spaces.front(), std::move(states));
  });
}

json framework_to_json(const Framework& fw) {
  json out;
  if (fw.homogeneous()) {
    out["space"] = space_to_json(fw.space());
  } else {
    json list = json::array();
    for (const MetricSpace& s : fw.spaces()) list.push_back(space_to_json(s));
    out["space"] = list;
  }
  out["graph"] = graph_to_json(fw.graph());
  json agents = json::array();
  for (int i = 0; i < fw.agent_count(); ++i) {
    const AgentState& s = fw.state(i);
    json a = {{"p", vector3_to_json(s.p)}};
    if (fw.space(i).tag() == SpaceTag::rd_s1) a["alpha"] = s.alpha;
    if (fw.space(i).tag() == SpaceTag::se3) {
      json r = json::array();
      for (int row = 0; row < 3; ++row) r.push_back(vector3_to_json(s.R.row(row).transpose()));
      a["R"] = r;
    }
    agents.push_back(a);
  }
  out["agents"] = agents;
  return out;
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Framework load_framework(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return framework_from_json(parse_json_text(buf.str()));
}

std::string matrix_to_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

json block_structure_json(const RigidityMatrix& b) {
  json rows = json::array();
  for (const RowBlock& rb : b.row_blocks) {
    rows.push_back({{"edge", {rb.edge.head + 1, rb.edge.tail + 1}}, {"offset", rb.offset}, {"size", rb.size}});
  }
  json cols = json::array();
  for (std::size_t i = 0; i < b.col_blocks.size(); ++i) {
    const AgentColumns& c = b.col_blocks[i];
    cols.push_back({{"agent", i + 1},
                    {"translation", {{"offset", c.translation_offset}, {"size", c.translation_size}}},
                    {"rotation", {{"offset", c.rotation_offset}, {"size", c.rotation_size}}}});
  }
  return {{"representation", std::string(to_string(b.representation))},
          {"rows", b.M.rows()},
          {"cols", b.M.cols()},
          {"row_blocks", rows},
          {"col_blocks", cols}};
}

std::string framework_to_dot(const Framework& fw, std::span<const Edge> added) {
  const bool directed = fw.graph().kind() == GraphKind::directed;
  const char* arrow = directed ? " -> " : " -- ";
  std::ostringstream out;
  out << (directed ? "digraph" : "graph") << " framework {\n";
  out << "  node [shape=circle];\n";
  for (int i = 0; i < fw.agent_count(); ++i) {
    const Eigen::Vector3d& p = fw.state(i).p;
    out << "  " << i + 1 << " [label=\"" << i + 1 << "\\n" << fw.space(i).name() << "\", pos=\""
        << format_double(p.x()) << "," << format_double(p.y()) << "!\", z=\"" << format_double(p.z()) << "\"];\n";
  }
  auto is_added = [&](const Edge& e) {
    for (const Edge& a : added) {
      if (a == e || (!directed && a.head == e.tail && a.tail == e.head)) return true;
    }
    return false;
  };
  for (const Edge& e : fw.graph().edges()) {
    out << "  " << e.head + 1 << arrow << e.tail + 1;
    if (is_added(e)) out << " [color=blue, style=bold, class=\"added\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace brl
