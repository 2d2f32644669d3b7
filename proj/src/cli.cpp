#include "mdnls/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mdnls/report.hpp"
#include "mdnls/scaling.hpp"

namespace mdnls {

namespace {

ScalingPlan plan_of(const RunConfig& c) {
  return compute_scaling(static_cast<int>(c.integer("d")), c.real("sigma"), c.real("s"), c.symbol().symbol_class(),
                         c.real("omega"), c.real("theta"), c.real("delta"));
}

Grid grid_of(const RunConfig& c) {
  return Grid(static_cast<int>(c.integer("d")), static_cast<std::size_t>(c.integer("n")), c.real("L"));
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

ExperimentReport run_experiment(const RunConfig& c) {
  const std::string& sub = c.subcommand;
  if (sub == "simulate") {
    SolveConfig cfg;
    cfg.symbol = c.symbol();
    cfg.lambda = c.real("lambda");
    cfg.sigma = c.real("sigma");
    cfg.dt = c.real("dt");
    cfg.T = c.real("T");
    cfg.eps = c.real("eps");
    cfg.snapshot_every = static_cast<int>(c.integer("snapshot_every"));
    cfg.dealias = c.flag("dealias");
    SimulationOptions o;
    o.amplitude = c.real("amplitude");
    o.width = c.real("width");
    o.seed = static_cast<std::uint64_t>(c.seed());
    return run_simulation(cfg, grid_of(c), o);
  }
  if (sub == "inflate") {
    InflationOptions o;
    o.h_list = c.list("h_list");
    o.lambda = c.real("lambda");
    o.max_phase = c.real("max_phase");
    o.min_steps = static_cast<std::size_t>(c.integer("min_steps"));
    o.required_growth = c.real("required_growth");
    return run_norm_inflation(plan_of(c), c.symbol(), grid_of(c), o);
  }
  if (sub == "ode-approx") {
    OdeApproxOptions o;
    o.eps_list = c.list("eps_list");
    o.r = static_cast<int>(c.integer("r"));
    o.lambda = c.real("lambda");
    o.zero_dispersion = c.flag("zero_dispersion");
    o.max_phase = c.real("max_phase");
    o.min_steps = static_cast<std::size_t>(c.integer("min_steps"));
    return run_ode_approx(plan_of(c), c.symbol(), grid_of(c), o);
  }
  if (sub == "strichartz") {
    StrichartzOptions o;
    o.dim = static_cast<int>(c.integer("d"));
    o.p = c.real("p");
    o.q = c.real("q");
    o.k_grid = c.list("k_grid");
    o.N_list = c.list("N_list");
    o.duration = c.real("I");
    o.half_length = c.real("L");
    o.n_ceiling = static_cast<std::size_t>(c.integer("n_ceiling"));
    o.snapshots_per_octave = static_cast<int>(c.integer("snapshots_per_octave"));
    o.contrast = c.flag("contrast");
    o.margin = c.real("margin");
    o.calibration_tolerance = c.real("calibration_tolerance");
    return run_strichartz_probe(c.symbol(), o);
  }
  if (sub == "singular") {
    SingularOptions o;
    o.sigma = c.real("sigma");
    o.lambda = c.real("lambda");
    o.t = c.real("t");
    o.delta_amp = c.real("delta_amp");
    o.rho_list = c.list("rho_list");
    o.rel_tol = c.real("tol");
    return run_singular_probe(o);
  }
  throw std::invalid_argument("unknown subcommand '" + sub + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudospectral laboratory for modified-dispersion NLS", "mdnls"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  for (auto name : subcommands()) {
    auto* sub = app.add_subcommand(std::string(name));
    sub->add_option("--config", config_path, "config file with a [" + std::string(name) + "] section")->required();
    sub->add_option("--out", out_dir, "output directory (default: <subcommand>_out)");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return exit_error;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  if (out_dir.empty()) out_dir = sub + "_out";
  try {
    const RunConfig config = parse_config(read_text(config_path), sub);
    const ExperimentReport report = run_experiment(config);
    write_outputs(out_dir, report, config);
    out << summary_text(report);
    return report.verdict ? exit_pass : exit_fail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mdnls
