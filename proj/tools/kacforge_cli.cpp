// Command-line driver: parses flags into a Command, runs the pipeline and
// prints the report. Exit status follows Report::exit_code().
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "kacforge/errors.hpp"
#include "kacforge/io.hpp"

namespace {

struct Sub {
  CLI::App *app;
  kacforge::Command cmd;
  std::vector<std::pair<std::string, std::string>> opts; // key, value storage
};

} // namespace

int main(int argc, char **argv) {
  using namespace kacforge;
  CLI::App app{"Finite bicrossed-product Kac algebras: construction, representation theory and audits"};
  app.require_subcommand(1);

  std::string seed_text, config_path, format, out_path;
  app.add_option("--seed", seed_text, "Seed (decimal or 0x-hex); KACFORGE_SEED overrides the config file");
  app.add_option("--config", config_path, "Config file (object: config)");
  app.add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured", "json"}));
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");

  Command cmd;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> options;
  auto opt = [&](CLI::App *sub, const std::string &key, const std::string &help) {
    sub->add_option_function<std::string>("--" + key, [&, key](const std::string &v) { options[key] = v; }, help);
  };

  auto *validate = app.add_subcommand("validate", "Load and validate input files");
  validate->add_option("inputs", inputs, "Files to validate")->required();
  auto *build = app.add_subcommand("build", "Build the Kac algebra and check its axioms");
  build->add_option("pair", inputs, "Matched-pair file or corpus:<name>")->required();
  opt(build, "dump", "Write the structure constants to a file");
  auto *irreps = app.add_subcommand("irreps", "Enumerate irreducible corepresentations");
  irreps->add_option("pair", inputs, "Matched-pair file")->required();
  auto *fusion = app.add_subcommand("fusion", "Fusion rules of a pair or a ring file");
  fusion->add_option("input", inputs, "Matched-pair or ring file")->required();
  auto *invariants = app.add_subcommand("invariants", "Intrinsic group and character spectrum");
  invariants->add_option("pair", inputs, "Matched-pair file")->required();
  auto *deform = app.add_subcommand("deform", "Deform a pair by a crossed homomorphism recipe");
  deform->add_option("recipe", inputs, "Matched-pair file with a recipe")->required();
  auto *crossed = app.add_subcommand("crossed", "Crossed product C(G) x| Gamma (beta trivial)");
  crossed->add_option("pair", inputs, "Matched-pair file")->required();
  opt(crossed, "samples", "Random dual elements for the Fourier identities (default 10)");
  opt(crossed, "max-labels", "Skip the Mor-dimension cross-check above this many labels (default 24)");
  auto *audit = app.add_subcommand("audit", "Cross-check fusion claims against two Mor-dimension oracles");
  audit->add_option("pair", inputs, "Matched-pair file")->required();

  auto *shadow = app.add_subcommand("shadow", "Finite shadows of the approximation properties");
  shadow->require_subcommand(1);
  auto *cheb = shadow->add_subcommand("chebyshev", "P_k(t)/P_k(N) for the free orthogonal states");
  opt(cheb, "N", "N >= 2 (default 3)");
  opt(cheb, "t", "0 < t < N, decimal or fraction (default 2)");
  opt(cheb, "cutoff", "Largest k (default 10)");
  opt(cheb, "eps", "Report the first k with value below eps");
  auto *tv = shadow->add_subcommand("tv", "Total variation distance of two measures");
  tv->add_option("measures", inputs, "Two measure files")->expected(2)->required();
  auto *obst = shadow->add_subcommand("obstruction", "Relative property (T) obstruction on a group");
  obst->add_option("group", inputs, "Group file")->required();
  opt(obst, "denominator", "Grid denominator (default 4)");
  opt(obst, "samples", "Random measures (default 200)");
  auto *push = shadow->add_subcommand("pushforward", "alpha_gamma of a measure on G");
  push->add_option("inputs", inputs, "Measure file, then matched-pair file")->expected(2)->required();
  opt(push, "gamma", "Label of gamma (default identity)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  for (auto *sub : app.get_subcommands()) {
    cmd.name = sub->get_name();
    for (auto *s2 : sub->get_subcommands())
      cmd.sub = s2->get_name();
  }
  cmd.inputs = inputs;
  cmd.options = options;

  RunConfig config;
  try {
    if (!config_path.empty())
      config = load_config(config_path);
    config = apply_environment(config);
    if (!seed_text.empty()) {
      std::size_t used = 0;
      config.seed = std::stoull(seed_text, &used, 0);
      if (used != seed_text.size())
        throw ParseError("--seed: invalid value '" + seed_text + "'");
    }
    if (!format.empty())
      config.format = format == "text" ? OutputFormat::text : OutputFormat::structured;
    config.validate();
  } catch (const std::exception &e) {
    std::cerr << "kacforge: " << e.what() << "\n";
    return 1;
  }

  const Report report = run_pipeline(cmd, config);
  const std::string text = report.render(config.format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << text;
  }
  return report.exit_code();
}
