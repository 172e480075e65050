/**
 * @file io.hpp
 * @brief Framework JSON, matrix CSV, block-structure JSON and DOT export.
 *
 * Framework schema (vertex indices 1-based):
 *
 *   {
 *     "space": "SE3" | {"type": "R3xS1", "axis": [0,0,1]} | [<space> per agent],
 *     "graph": {"n": 4, "kind": "directed", "edges": [[1,2], [2,3]]},
 *     "agents": [{"p": [x, y, z?], "alpha": 0.3, "R": [[...],[...],[...]]}, ...]
 *   }
 *
 * Space types: R2, R3, R2xS1 (alias SE2), R3xS1 (needs "axis"), SE3.
 * SE(3) agents may give "axis_angle": {"angle": a, "axis": [x,y,z]}
 * instead of "R". Planar agents may omit z.
 */
#pragma once

#include "brl/agents.hpp"
#include "brl/graph.hpp"
#include "brl/rigidity.hpp"

#include "json.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace brl {

using json = nlohmann::json;

SensingGraph graph_from_json(const json& j);
json graph_to_json(const SensingGraph& g);

MetricSpace space_from_json(const json& j);
json space_to_json(const MetricSpace& s);

Framework framework_from_json(const json& j);
json framework_to_json(const Framework& fw);

/// ParseError on unreadable or malformed files, ValidationError on
/// invariant violations.
Framework load_framework(const std::filesystem::path& path);
json parse_json_text(const std::string& text);

/// Row-major, comma separated, 17 significant digits.
std::string matrix_to_csv(const Eigen::MatrixXd& m);

/// Row blocks per edge and column blocks per agent.
json block_structure_json(const RigidityMatrix& b);

/// Graphviz text. `added` edges are drawn blue/bold with class="added".
std::string framework_to_dot(const Framework& fw, std::span<const Edge> added = {});

}  // namespace brl
