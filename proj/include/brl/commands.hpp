/**
 * @file commands.hpp
 * @brief Subcommand implementations behind the `brl` executable.
 *
 * Each command writes to the given streams and returns a process exit
 * code: 0 success, 1 batch with failing files, 2 parse error,
 * 3 validation error, 4 numerical error.
 */
#pragma once

#include "brl/agents.hpp"
#include "brl/io.hpp"
#include "brl/numeric.hpp"
#include "brl/rigidity.hpp"
#include "brl/scenarios.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace brl {

inline constexpr int exit_ok = 0;
inline constexpr int exit_batch_failure = 1;
inline constexpr int exit_parse = 2;
inline constexpr int exit_validation = 3;
inline constexpr int exit_numerical = 4;

/// Exit code for the exception currently being handled.
int exit_code_for(const std::exception& e);

struct AnalysisOptions {
  TolerancePolicy policy;
  std::uint64_t seed = 1;
  int fd_trials = 20;
  bool timing = false;
};

/// One source of settings (command-line flags or a config file). Unset
/// fields fall through to the next source.
struct OptionLayer {
  std::optional<std::string> profile;
  std::optional<double> rank_rtol;
  std::optional<double> subspace_tol;
  std::optional<double> fd_step;
  std::optional<std::uint64_t> seed;
  std::optional<int> fd_trials;
  std::optional<bool> timing;
  std::optional<std::string> out;
  std::optional<std::string> csv_prefix;
  std::optional<bool> augment;
};

/// Keys: profile, rank_rtol, subspace_tol, fd_step, seed, fd_trials,
/// timing, out, csv_prefix, augment.
OptionLayer option_layer_from_json(const json& j);
OptionLayer load_option_layer(const std::filesystem::path& path);

/// Precedence: flags > config > BRL_TOLERANCE_PROFILE (`env_profile`) >
/// built-in defaults. A profile picks the preset the numeric overrides
/// are applied on top of.
AnalysisOptions resolve_options(const OptionLayer& flags, const std::optional<OptionLayer>& config,
                                const char* env_profile);

struct OutputOptions {
  std::optional<std::filesystem::path> out;
  std::optional<std::string> csv_prefix;
  bool augment = false;
};

/// Same precedence as resolve_options for the output-related settings.
OutputOptions resolve_output_options(const OptionLayer& flags, const std::optional<OptionLayer>& config);

struct AnalysisReport {
  std::string input;
  std::string space;
  bool heterogeneous = false;
  int n = 0;
  int m = 0;
  std::string graph_kind;
  bool connected = true;
  bool degenerate = false;
  std::optional<Eigen::Vector3d> collinear_direction;

  RigidityVerdict verdict;
  std::optional<std::pair<Eigen::Index, Eigen::Index>> per_space_shape;
  std::pair<Eigen::Index, Eigen::Index> unified_shape;
  int unified_rank = 0;
  int zero_columns = 0;
  int complete_kernel_dim = 0;

  int trivial_dim = 0;
  std::vector<std::string> trivial_labels;
  int virtual_dim = 0;

  std::optional<double> fd_per_space;
  double fd_unified = 0.0;

  AnalysisOptions options;
  std::optional<double> elapsed_ms;
  /// Reasons for a numerical failure: rank and kernel tests disagreeing,
  /// or kernel inclusion violated.
  std::vector<std::string> numerical_failures;
};

/// Full analysis of one framework. Matrices are returned through the
/// optional out-parameters for CSV export.
AnalysisReport analyze_framework(const Framework& fw, const AnalysisOptions& opt, std::string input = {},
                                 RigidityMatrix* per_space = nullptr, RigidityMatrix* unified = nullptr);

json report_to_json(const AnalysisReport& r);

/// Writes `<prefix>_<rep>.csv` and `<prefix>_<rep>_blocks.json`.
void write_matrix_files(const RigidityMatrix& b, const std::string& prefix);

int cmd_analyze(const std::filesystem::path& path, const AnalysisOptions& opt,
                const std::optional<std::filesystem::path>& out_path, const std::optional<std::string>& csv_prefix,
                std::ostream& out, std::ostream& err);

int cmd_export_dot(const std::filesystem::path& path, bool augment, const AnalysisOptions& opt, std::ostream& out,
                   std::ostream& err);

struct BatchRow {
  std::string name;
  std::string space;
  int n = 0;
  int m = 0;
  int rank = 0;
  std::optional<int> expected;
  std::string classification;
  std::string error;  // empty on success
};

/// Analyzes every *.json file in `dir` concurrently; rows sorted by file
/// name.
std::vector<BatchRow> run_batch(const std::filesystem::path& dir, const AnalysisOptions& opt);
std::string format_batch_table(const std::vector<BatchRow>& rows);

int cmd_batch(const std::filesystem::path& dir, const AnalysisOptions& opt, std::ostream& out, std::ostream& err);

/// Writes a generated framework as JSON: a named fixture when
/// `spec.fixture` is set, random_framework(spec) otherwise.
int cmd_gen(const GeneratorSpec& spec, const std::optional<std::filesystem::path>& out_path, std::ostream& out,
            std::ostream& err);

/// "R2", "R3", "R2xS1", "SE2", "SE3", or "R3xS1:ax,ay,az".
MetricSpace space_from_string(const std::string& text);

}  // namespace brl
