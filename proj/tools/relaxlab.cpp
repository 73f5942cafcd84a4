#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "relaxlab/cli/config.hpp"
#include "relaxlab/cli/plot.hpp"
#include "relaxlab/cli/results.hpp"
#include "relaxlab/errors.hpp"

namespace {

int jobs_from_env() {
  const char* env = std::getenv("RELAXLAB_JOBS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw relaxlab::ConfigError("RELAXLAB_JOBS", "expected a positive integer");
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace relaxlab;
  CLI::App app{"relaxlab: spectral experiments for the diffusively scaled Jin-Xin relaxation system"};
  app.require_subcommand(0, 1);

  std::string config_path, preset_name, out_dir;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool print_config = false, list_presets = false;
  auto* config_opt = app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  auto* preset_opt = app.add_option("--preset", preset_name, "built-in configuration")->excludes(config_opt);
  app.add_option("--out", out_dir, "results root (default: the config's output, 'runs')");
  auto* seed_opt = app.add_option("--seed", seed, "run seed");
  auto* jobs_opt = app.add_option("--jobs", jobs, "parallel trajectories (fallback: RELAXLAB_JOBS)")->check(CLI::PositiveNumber);
  app.add_flag("--print-config", print_config, "print the validated configuration and its hash, then exit");
  app.add_flag("--list-presets", list_presets, "list preset names and exit");

  auto* plot = app.add_subcommand("plot", "render a CSV file as SVG");
  std::string csv_path, svg_path, kind = "loglog";
  plot->add_option("csv", csv_path, "input CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("-o,--output", svg_path, "output SVG (default: input with .svg)");
  plot->add_option("--kind", kind, "loglog | linear | overdamping")->check(CLI::IsMember({"loglog", "linear", "overdamping"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_presets) {
      for (const auto& name : cli::preset_names()) std::cout << name << '\n';
      return 0;
    }
    if (plot->parsed()) {
      std::ifstream in(csv_path);
      std::stringstream buf;
      buf << in.rdbuf();
      const auto svg = cli::plot_csv(buf.str(), cli::parse_plot_kind(kind));
      if (svg_path.empty()) svg_path = csv_path.substr(0, csv_path.rfind('.')) + ".svg";
      std::ofstream(svg_path, std::ios::binary) << svg;
      std::cout << svg_path << '\n';
      return 0;
    }
    if (config_opt->count() == 0 && preset_opt->count() == 0) {
      std::cerr << "relaxlab: give --config <path> or --preset <name>\n" << app.help();
      return 2;
    }
    auto config = config_opt->count() ? cli::parse_config_file(config_path) : cli::parse_config(cli::preset(preset_name));
    if (seed_opt->count()) config.spec.seed = seed;
    if (!out_dir.empty()) config.output = out_dir;
    if (jobs_opt->count())
      config.spec.jobs = jobs;
    else if (const int env = jobs_from_env())
      config.spec.jobs = env;
    if (print_config) {
      std::cout << cli::serialize_config(config).dump(2) << "\nhash " << cli::config_hash(config) << '\n';
      return 0;
    }
    return cli::dispatch(config, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "relaxlab: " << e.what() << '\n';
    return 2;
  }
}
