// brl: bearing rigidity analysis from the command line.

#include "brl/commands.hpp"
#include "brl/error.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

namespace {

void add_tolerance_flags(CLI::App* cmd, brl::OptionLayer& flags, std::string& config) {
  cmd->add_option("--config", config, "JSON config file (flags take precedence)");
  cmd->add_option("--profile", flags.profile, "Tolerance preset: default, strict, loose");
  cmd->add_option("--rank-rtol", flags.rank_rtol, "Relative singular-value cutoff for rank decisions");
  cmd->add_option("--subspace-tol", flags.subspace_tol, "Residual bound for subspace comparisons");
  cmd->add_option("--fd-step", flags.fd_step, "Finite-difference step");
  cmd->add_option("--seed", flags.seed, "Seed for random variations");
  cmd->add_option("--fd-trials", flags.fd_trials, "Random directions in the finite-difference check");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bearing rigidity analysis for multi-agent frameworks"};
  app.require_subcommand(1);

  brl::OptionLayer flags;
  std::string config;
  std::string input;
  std::string out_path;
  bool timing = false;
  bool augment = false;

  auto* analyze = app.add_subcommand("analyze", "Analyze one framework JSON file and print a JSON report");
  analyze->add_option("file", input, "Framework JSON")->required();
  analyze->add_option("--out", flags.out, "Write the report here instead of stdout");
  analyze->add_option("--csv-prefix", flags.csv_prefix, "Write rigidity matrices as <prefix>_<representation>.csv");
  auto* timing_flag = analyze->add_flag("--timing", timing, "Include wall-clock time in the report");
  add_tolerance_flags(analyze, flags, config);

  auto* dot = app.add_subcommand("export-dot", "Print the sensing graph in Graphviz DOT format");
  dot->add_option("file", input, "Framework JSON")->required();
  auto* augment_flag = dot->add_flag("--augment", augment, "Add edges until IBR and highlight them");
  add_tolerance_flags(dot, flags, config);

  auto* batch = app.add_subcommand("batch", "Analyze every *.json file in a directory");
  batch->add_option("dir", input, "Directory of framework files")->required();
  add_tolerance_flags(batch, flags, config);

  brl::GeneratorSpec gen_spec;
  std::vector<std::string> space_names;
  std::vector<double> collinear;
  auto* gen = app.add_subcommand("gen", "Generate a framework JSON (named fixture or random)");
  gen->add_option("--fixture", gen_spec.fixture, "Named fixture")
      ->check(CLI::IsMember(brl::fixture_names()));
  gen->add_option("--space", space_names, "Space (repeat once per agent for heterogeneous frameworks)");
  gen->add_option("--n", gen_spec.n, "Number of agents");
  gen->add_option("--density", gen_spec.density, "Fraction of complete-graph edges");
  gen->add_option("--seed", gen_spec.seed, "Generator seed");
  gen->add_option("--collinear", collinear, "Place agents on a line with this direction")->expected(3);
  gen->add_option("--out", out_path, "Write here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      if (gen_spec.fixture.empty()) {
        if (space_names.empty()) throw brl::ParseError("gen needs --fixture or --space");
        for (const auto& s : space_names) gen_spec.spaces.push_back(brl::space_from_string(s));
        if (!collinear.empty()) {
          gen_spec.placement = brl::Placement::collinear;
          gen_spec.collinear_axis = Eigen::Vector3d(collinear[0], collinear[1], collinear[2]);
        }
      }
      std::optional<std::filesystem::path> out;
      if (!out_path.empty()) out = out_path;
      return brl::cmd_gen(gen_spec, out, std::cout, std::cerr);
    }

    if (timing_flag->count() > 0) flags.timing = timing;
    if (augment_flag->count() > 0) flags.augment = augment;
    std::optional<brl::OptionLayer> file;
    if (!config.empty()) file = brl::load_option_layer(config);
    const brl::AnalysisOptions opt = brl::resolve_options(flags, file, std::getenv("BRL_TOLERANCE_PROFILE"));
    const brl::OutputOptions output = brl::resolve_output_options(flags, file);
    if (analyze->parsed()) return brl::cmd_analyze(input, opt, output.out, output.csv_prefix, std::cout, std::cerr);
    if (dot->parsed()) return brl::cmd_export_dot(input, output.augment, opt, std::cout, std::cerr);
    return brl::cmd_batch(input, opt, std::cout, std::cerr);
  } catch (const brl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return brl::exit_code_for(e);
  }
}
