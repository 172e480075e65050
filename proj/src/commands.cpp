#include "brl/commands.hpp"

#include "brl/error.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

namespace brl {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return exit_parse;
  if (dynamic_cast<const ValidationError*>(&e)) return exit_validation;
  if (dynamic_cast<const NumericalError*>(&e)) return exit_numerical;
  return exit_validation;
}

OptionLayer option_layer_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  static const std::vector<std::string> known = {"profile", "rank_rtol", "subspace_tol", "fd_step", "seed",
                                                 "fd_trials", "timing", "out", "csv_prefix", "augment"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }
  OptionLayer layer;
  try {
    if (j.contains("profile")) layer.profile = j.at("profile").get<std::string>();
    if (j.contains("rank_rtol")) layer.rank_rtol = j.at("rank_rtol").get<double>();
    if (j.contains("subspace_tol")) layer.subspace_tol = j.at("subspace_tol").get<double>();
    if (j.contains("fd_step")) layer.fd_step = j.at("fd_step").get<double>();
    if (j.contains("seed")) layer.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("fd_trials")) layer.fd_trials = j.at("fd_trials").get<int>();
    if (j.contains("timing")) layer.timing = j.at("timing").get<bool>();
    if (j.contains("out")) layer.out = j.at("out").get<std::string>();
    if (j.contains("csv_prefix")) layer.csv_prefix = j.at("csv_prefix").get<std::string>();
    if (j.contains("augment")) layer.augment = j.at("augment").get<bool>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return layer;
}

OptionLayer load_option_layer(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return option_layer_from_json(parse_json_text(buf.str()));
}

namespace {

template <typename T>
std::optional<T> pick(const OptionLayer& flags, const std::optional<OptionLayer>& config,
                      std::optional<T> OptionLayer::*member) {
  if (flags.*member) return flags.*member;
  if (config) return (*config).*member;
  return std::nullopt;
}

}  // namespace

OutputOptions resolve_output_options(const OptionLayer& flags, const std::optional<OptionLayer>& config) {
  OutputOptions o;
  if (auto v = pick(flags, config, &OptionLayer::out)) o.out = *v;
  o.csv_prefix = pick(flags, config, &OptionLayer::csv_prefix);
  o.augment = pick(flags, config, &OptionLayer::augment).value_or(false);
  return o;
}

AnalysisOptions resolve_options(const OptionLayer& flags, const std::optional<OptionLayer>& config,
                                const char* env_profile) {
  auto pick = [&](auto member) { return brl::pick(flags, config, member); };

  std::string profile = "default";
  if (auto p = pick(&OptionLayer::profile)) {
    profile = *p;
  } else if (env_profile && *env_profile) {
    profile = env_profile;
  }

  AnalysisOptions opt;
  opt.policy = TolerancePolicy::preset(profile);
  if (auto v = pick(&OptionLayer::rank_rtol)) opt.policy.rank_rtol = *v;
  if (auto v = pick(&OptionLayer::subspace_tol)) opt.policy.subspace_tol = *v;
  if (auto v = pick(&OptionLayer::fd_step)) opt.policy.fd_step = *v;
  if (auto v = pick(&OptionLayer::seed)) opt.seed = *v;
  if (auto v = pick(&OptionLayer::fd_trials)) opt.fd_trials = *v;
  if (auto v = pick(&OptionLayer::timing)) opt.timing = *v;
  opt.policy.validate();
  if (opt.fd_trials < 1) throw ValidationError("fd_trials must be positive");
  return opt;
}

AnalysisReport analyze_framework(const Framework& fw, const AnalysisOptions& opt, std::string input,
                                 RigidityMatrix* per_space_out, RigidityMatrix* unified_out) {
  const auto start = std::chrono::steady_clock::now();
  const TolerancePolicy& pol = opt.policy;

  AnalysisReport r;
  r.input = std::move(input);
  r.options = opt;
  r.space = fw.space_name();
  r.heterogeneous = !fw.homogeneous();
  r.n = fw.agent_count();
  r.m = fw.edge_count();
  r.graph_kind = std::string(to_string(fw.graph().kind()));
  r.connected = fw.graph().is_connected();

  const DegeneracyReport deg = is_non_degenerate(fw, pol);
  r.degenerate = !deg.non_degenerate;
  if (r.degenerate) r.collinear_direction = deg.direction;

  RigidityMatrix unified = unified_rigidity_matrix(fw);
  r.unified_shape = {unified.M.rows(), unified.M.cols()};
  r.unified_rank = numerical_rank(unified.M, pol);
  const SubspaceBasis virt = virtual_variation_basis(fw);
  r.virtual_dim = virt.dim();
  r.zero_columns = virt.dim();

  if (fw.homogeneous()) {
    RigidityMatrix per_space = rigidity_matrix(fw);
    r.per_space_shape = std::pair{per_space.M.rows(), per_space.M.cols()};
    r.verdict = ibr_verdict(fw, pol);
    r.complete_kernel_dim = r.verdict.columns - r.verdict.complete_rank;
    if (!r.degenerate) {
      const SubspaceBasis trivial = trivial_variation_basis(fw, pol);
      r.trivial_dim = trivial.dim();
      for (VariationLabel l : trivial.labels) r.trivial_labels.emplace_back(to_string(l));
    } else {
      r.trivial_dim = r.complete_kernel_dim;
    }
    r.fd_per_space = fd_jacobian_check(fw, opt.fd_trials, pol, opt.seed, Representation::per_space);
    if (per_space_out) *per_space_out = std::move(per_space);
  } else {
    const HeteroAnalysis h = hetero_kernel_analysis(fw, pol);
    r.verdict = h.verdict;
    r.complete_kernel_dim = h.complete_nullity;
    r.trivial_dim = h.trivial.dim();
    for (VariationLabel l : h.trivial.labels) r.trivial_labels.emplace_back(to_string(l));
  }
  r.fd_unified = fd_jacobian_check(fw, opt.fd_trials, pol, opt.seed, Representation::unified);
  if (unified_out) *unified_out = std::move(unified);

  if (!r.verdict.criteria_agree) r.numerical_failures.emplace_back("rank test and kernel test disagree");
  if (!r.verdict.kernel_inclusion_holds) r.numerical_failures.emplace_back("Ker B_K is not contained in Ker B_G");

  if (opt.timing) {
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return r;
}

json report_to_json(const AnalysisReport& r) {
  const RigidityVerdict& v = r.verdict;
  json framework = {{"space", r.space},         {"heterogeneous", r.heterogeneous}, {"n", r.n}, {"m", r.m},
                    {"graph_kind", r.graph_kind}, {"connected", r.connected},       {"degenerate", r.degenerate}};
  if (r.collinear_direction) {
    const Eigen::Vector3d& d = *r.collinear_direction;
    framework["collinear_direction"] = {d.x(), d.y(), d.z()};
  }

  json verdict = {{"classification", std::string(to_string(v.classification))},
                  {"representation", std::string(to_string(v.representation))},
                  {"rank", v.rank},
                  {"nullity", v.nullity},
                  {"columns", v.columns},
                  {"complete_rank", v.complete_rank},
                  {"kernel_equal_to_complete", v.kernel_equal_to_complete},
                  {"kernel_inclusion_holds", v.kernel_inclusion_holds},
                  {"criteria_agree", v.criteria_agree},
                  {"implied", v.implied},
                  {"notes", v.notes}};
  verdict["expected_rank"] = v.expected_rank ? json(*v.expected_rank) : json(nullptr);
  verdict["rank_test"] = v.rank_test ? json(*v.rank_test) : json(nullptr);

  json matrices;
  if (r.per_space_shape) {
    matrices["per_space"] = {{"rows", r.per_space_shape->first}, {"cols", r.per_space_shape->second}};
  } else {
    matrices["per_space"] = nullptr;
  }
  matrices["unified"] = {{"rows", r.unified_shape.first},
                         {"cols", r.unified_shape.second},
                         {"rank", r.unified_rank},
                         {"zero_columns", r.zero_columns}};

  json subspaces = {{"complete_kernel_dim", r.complete_kernel_dim},
                    {"trivial", {{"dim", r.trivial_dim}, {"labels", r.trivial_labels}}},
                    {"virtual", {{"dim", r.virtual_dim}}}};

  json fd = {{"step", r.options.policy.fd_step}, {"trials", r.options.fd_trials}, {"seed", r.options.seed},
             {"unified_max_rel_error", r.fd_unified}};
  fd["per_space_max_rel_error"] = r.fd_per_space ? json(*r.fd_per_space) : json(nullptr);

  json tolerances = {{"subspace_tol", r.options.policy.subspace_tol}, {"fd_step", r.options.policy.fd_step}};
  tolerances["rank_rtol"] = r.options.policy.rank_rtol ? json(*r.options.policy.rank_rtol) : json("auto");

  json out = {{"schema_version", 1}, {"input", r.input},         {"framework", framework},
              {"verdict", verdict},   {"matrices", matrices},    {"subspaces", subspaces},
              {"fd_check", fd},       {"tolerances", tolerances}, {"numerical_failures", r.numerical_failures}};
  if (r.elapsed_ms) out["timing_ms"] = *r.elapsed_ms;
  return out;
}

void write_matrix_files(const RigidityMatrix& b, const std::string& prefix) {
  const std::string base = prefix + "_" + std::string(to_string(b.representation));
  std::ofstream csv(base + ".csv");
  std::ofstream blocks(base + "_blocks.json");
  if (!csv || !blocks) throw ValidationError("cannot write matrix files with prefix " + prefix);
  csv << matrix_to_csv(b.M);
  blocks << block_structure_json(b).dump(2) << '\n';
}

int cmd_analyze(const fs::path& path, const AnalysisOptions& opt, const std::optional<fs::path>& out_path,
                const std::optional<std::string>& csv_prefix, std::ostream& out, std::ostream& err) {
  try {
    const Framework fw = load_framework(path);
    RigidityMatrix per_space;
    RigidityMatrix unified;
    const AnalysisReport report = analyze_framework(fw, opt, path.filename().string(), &per_space, &unified);
    if (csv_prefix) {
      if (fw.homogeneous()) write_matrix_files(per_space, *csv_prefix);
      write_matrix_files(unified, *csv_prefix);
    }
    const std::string text = report_to_json(report).dump(2) + "\n";
    if (out_path) {
      std::ofstream f(*out_path);
      if (!f) throw ValidationError("cannot write " + out_path->string());
      f << text;
    } else {
      out << text;
    }
    if (!report.numerical_failures.empty()) {
      for (const std::string& reason : report.numerical_failures) err << "numerical error: " << reason << '\n';
      return exit_numerical;
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_export_dot(const fs::path& path, bool augment, const AnalysisOptions& opt, std::ostream& out,
                   std::ostream& err) {
  try {
    const Framework fw = load_framework(path);
    if (augment) {
      const AugmentResult a = augment_to_ibr(fw, opt.policy);
      out << framework_to_dot(a.framework, a.added);
    } else {
      out << framework_to_dot(fw);
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

namespace {

BatchRow analyze_row(const fs::path& file, const AnalysisOptions& opt) {
  BatchRow row;
  row.name = file.filename().string();
  try {
    const Framework fw = load_framework(file);
    row.space = fw.space_name();
    row.n = fw.agent_count();
    row.m = fw.edge_count();
    const AnalysisReport r = analyze_framework(fw, opt, row.name);
    row.rank = r.verdict.rank;
    row.expected = r.verdict.expected_rank;
    row.classification = std::string(to_string(r.verdict.classification));
    if (!r.numerical_failures.empty()) row.error = "numerical: " + r.numerical_failures.front();
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<BatchRow> run_batch(const fs::path& dir, const AnalysisOptions& opt) {
  if (!fs::is_directory(dir)) throw ValidationError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });

  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<BatchRow> rows(files.size());
  for (std::size_t begin = 0; begin < files.size(); begin += workers) {
    const std::size_t end = std::min(files.size(), begin + workers);
    std::vector<std::future<BatchRow>> jobs;
    for (std::size_t i = begin; i < end; ++i) {
      jobs.push_back(std::async(std::launch::async, analyze_row, files[i], std::cref(opt)));
    }
    for (std::size_t i = begin; i < end; ++i) rows[i] = jobs[i - begin].get();
  }
  return rows;
}

std::string format_batch_table(const std::vector<BatchRow>& rows) {
  std::ostringstream out;
  out << "name\tspace\tn\tm\trank\texpected\tclassification\tstatus\n";
  for (const BatchRow& r : rows) {
    out << r.name << '\t';
    if (r.space.empty()) {
      out << "-\t-\t-\t-\t-\t-\t";
    } else {
      out << r.space << '\t' << r.n << '\t' << r.m << '\t' << r.rank << '\t'
          << (r.expected ? std::to_string(*r.expected) : "-") << '\t' << r.classification << '\t';
    }
    out << (r.error.empty() ? "ok" : "error: " + r.error) << '\n';
  }
  return out.str();
}

int cmd_batch(const fs::path& dir, const AnalysisOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<BatchRow> rows = run_batch(dir, opt);
    out << format_batch_table(rows);
    const bool failed = std::any_of(rows.begin(), rows.end(), [](const BatchRow& r) { return !r.error.empty(); });
    return failed ? exit_batch_failure : exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

int cmd_gen(const GeneratorSpec& spec, const std::optional<fs::path>& out_path, std::ostream& out,
            std::ostream& err) {
  try {
    const Framework fw = spec.fixture.empty() ? random_framework(spec) : named_fixture(spec.fixture);
    const std::string text = framework_to_json(fw).dump(2) + "\n";
    if (out_path) {
      std::ofstream f(*out_path);
      if (!f) throw ValidationError("cannot write " + out_path->string());
      f << text;
    } else {
      out << text;
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

MetricSpace space_from_string(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return space_from_json(json(text));
  const std::string type = text.substr(0, colon);
  if (type != "R3xS1") throw ParseError("only R3xS1 takes an axis: " + text);
  std::vector<double> axis;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      axis.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParseError("bad axis component '" + item + "'");
    }
  }
  if (axis.size() != 3) throw ParseError("axis needs three components: " + text);
  return MetricSpace::euclidean_circle(3, Eigen::Vector3d(axis[0], axis[1], axis[2]));
}

}  // namespace brl
