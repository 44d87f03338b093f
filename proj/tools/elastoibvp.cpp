// Command-line front end for the elastoibvp solvers.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "elastoibvp/config.hpp"
#include "elastoibvp/run.hpp"

namespace cfg = elastoibvp::config;
namespace run = elastoibvp::run;

namespace {

struct Command {
  const char* name;
  const char* help;
  cfg::SolverKind solver;
  bool check;
};

// check-admissibility takes its solver from [solver] type.
constexpr Command kCommands[] = {
    {"solve-linear", "linearised solution about a constant state", cfg::SolverKind::Linear, false},
    {"solve-exact", "exact solution by path-cost minimisation", cfg::SolverKind::Variational, false},
    {"solve-riemann", "closed-form Riemann solution", cfg::SolverKind::Riemann, false},
    {"solve-viscous", "finite-difference solution of the viscous problem", cfg::SolverKind::Viscous,
     false},
    {"verify-convergence", "L1 errors of viscous runs against the exact solution",
     cfg::SolverKind::Verify, false},
    {"check-admissibility", "boundary and entropy checks on a computed field",
     cfg::SolverKind::Riemann, true},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quarter-plane IBVP solvers for the nonconservative elastodynamics system"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  bool quiet = false;
  for (const auto& c : kCommands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "problem config file")->required();
    sub->add_option("--out", out_path, "output CSV path ('-' for stdout)");
    sub->add_flag("--quiet", quiet, "suppress progress messages");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : run::kConfigError;
  }

  const Command* cmd = nullptr;
  for (const auto& c : kCommands) {
    if (app.got_subcommand(c.name)) cmd = &c;
  }

  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "io error: cannot read config '" << config_path << "'\n";
    return run::kIoError;
  }
  std::ostringstream text;
  text << in.rdbuf();

  cfg::RunConfig config;
  try {
    config = cmd->check ? cfg::parse_config(text.str()) : cfg::parse_config(text.str(), cmd->solver);
  } catch (const cfg::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return run::kConfigError;
  }
  if (cmd->check && config.solver == cfg::SolverKind::Verify) {
    std::cerr << "validation error (solver.type): check-admissibility needs a field solver\n";
    return run::kConfigError;
  }

  run::Options opts;
  if (!out_path.empty()) opts.out = out_path;
  opts.quiet = quiet;
  opts.check = cmd->check;
  return run::run(config, opts, std::cout, std::cerr);
}
