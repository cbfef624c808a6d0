#include <CLI11.hpp>

#include <iostream>

#include "convexdiff/workbench/app.hpp"

using namespace convexdiff;
using namespace convexdiff::workbench;

int main(int argc, char** argv) {
  CLI::App app{"convexdiff: differences of convex compact sets"};
  app.require_subcommand(1);

  CommandOptions opt;
  std::string scenario, arith, demo;
  std::string out_dir = ".";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--arith", arith, "override the scenario arithmetic")->check(CLI::IsMember({"rational", "double"}));
    cmd->add_flag("-q,--quiet", opt.quiet, "no progress output");
  };

  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("scenario", scenario, "scenario JSON file")->required();
  run->add_option("-j,--jobs", opt.jobs, "worker threads")->check(CLI::Range(1, 256));
  run->add_option("--out", out_dir, "directory for the report and SVG");
  add_common(run);

  auto* val = app.add_subcommand("validate", "check a scenario file without running it");
  val->add_option("scenario", scenario, "scenario JSON file")->required();
  add_common(val);

  auto* dem = app.add_subcommand("demo", "run a bundled scenario");
  dem->add_option("name", demo, "fig1, lemmas, lipschitz or nested")
      ->required()
      ->check(CLI::IsMember({"fig1", "lemmas", "lipschitz", "nested"}));
  dem->add_option("-j,--jobs", opt.jobs, "worker threads")->check(CLI::Range(1, 256));
  dem->add_option("--out", out_dir, "directory for the report and SVG");
  add_common(dem);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInvalid;
  }
  if (!arith.empty()) opt.arithmetic = parse_arithmetic(arith);
  opt.out_dir = out_dir;

  if (*run) return run_command(scenario, opt, std::cout, std::cerr);
  if (*val) return validate_command(scenario, opt, std::cout, std::cerr);
  return demo_command(demo, opt, std::cout, std::cerr);
}
