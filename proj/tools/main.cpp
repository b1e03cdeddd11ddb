// fusionscale command-line runner: policy sweeps, zeta-constant estimation,
// and asymptotic-bound reports. Exit codes: 0 ok, 2 bad configuration,
// 3 missing zeta-table data.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fusionscale/fusionscale.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitMissingZeta = 3;

struct SimulateArgs {
  std::string config_path;
  std::string out_dir;
  long seed = -1;
  std::vector<std::string> overrides;
};

int run_simulate(const SimulateArgs& args) {
  fusionscale::ExperimentConfig config = fusionscale::parse_config_file(args.config_path);
  for (const auto& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw fusionscale::ConfigError("--set expects key=value, got: " + kv);
    fusionscale::apply_config_entry(config, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);
  if (!args.out_dir.empty()) config.out_dir = args.out_dir;
  const fusionscale::SweepOutput out = fusionscale::run_sweep(config);
  std::cout << "wrote " << out.rows_written << " rows over " << out.cells.size()
            << " cells\n  raw:     " << out.raw_path << "\n  summary: " << out.summary_path
            << "\n";
  return kExitOk;
}

struct ZetaArgs {
  std::string kind = "mst";
  int k = 1;
  double delta = 0.5;
  std::vector<double> nus;
  long reps = 1000;
  long seed = 42;
  double intensity = 1.0;
  double window = 50.0;
  std::string table = "zeta_table.txt";
};

int run_zeta_cmd(const ZetaArgs& args) {
  fusionscale::ZetaRunArgs run;
  if (args.kind == "mst")
    run.kind = fusionscale::ZetaKind::mst();
  else if (args.kind == "knng")
    run.kind = fusionscale::ZetaKind::knng(args.k);
  else if (args.kind == "disc")
    run.kind = fusionscale::ZetaKind::disc(args.delta);
  else
    throw fusionscale::ConfigError("unknown zeta kind: " + args.kind);
  run.nus = args.nus;
  run.replicates = args.reps;
  run.seed = static_cast<std::uint64_t>(args.seed);
  run.intensity = args.intensity;
  run.window_side = args.window;
  run.table_path = args.table;
  const auto estimates = fusionscale::run_zeta(run);
  for (const auto& est : estimates) {
    std::printf("zeta(%s", args.kind.c_str());
    if (args.kind == "knng") std::printf(" k=%d", args.k);
    if (args.kind == "disc") std::printf(" delta=%g", args.delta);
    std::printf("; nu=%g) = %.9g +- %.9g  (%ld replicates, window %g)\n", est.nu, est.mean,
                est.std_error, est.replicates, est.window_side);
  }
  std::cout << "table: " << run.table_path << "\n";
  return kExitOk;
}

struct BoundsArgs {
  std::string config_path;
  std::string table_path;
  std::string summary_path;
  std::string out_path = "bounds.csv";
};

int run_bounds_cmd(const BoundsArgs& args) {
  const fusionscale::ExperimentConfig config = fusionscale::parse_config_file(args.config_path);
  const fusionscale::ZetaTable table = fusionscale::ZetaTable::load(args.table_path);
  std::vector<fusionscale::SummaryRow> summary;
  std::string summary_path = args.summary_path;
  if (summary_path.empty()) {
    const auto candidate = std::filesystem::path(config.out_dir) / "summary.csv";
    if (std::filesystem::exists(candidate)) summary_path = candidate.string();
  }
  if (!summary_path.empty()) summary = fusionscale::load_summary(summary_path);
  const auto rows = fusionscale::compute_bounds(config, table, summary);
  fusionscale::write_bounds_csv(config, rows, args.out_path);
  std::cout << "wrote " << rows.size() << " bound rows to " << args.out_path;
  if (!summary_path.empty()) std::cout << " (measured means from " << summary_path << ")";
  std::cout << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"energy-scaling simulator for in-network data-fusion policies"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "run a configured policy sweep");
  simulate->add_option("--config", sim.config_path, "experiment config file")->required();
  simulate->add_option("--seed", sim.seed, "override the config seed");
  simulate->add_option("--out", sim.out_dir, "override the output directory");
  simulate->add_option("--set", sim.overrides, "override any config key (key=value)");

  ZetaArgs zeta;
  auto* zeta_cmd = app.add_subcommand("zeta", "estimate scaling constants");
  zeta_cmd->add_option("--kind", zeta.kind, "graph kind: mst, knng, disc")->required();
  zeta_cmd->add_option("--k", zeta.k, "neighbor count for knng");
  zeta_cmd->add_option("--delta", zeta.delta, "radius for disc");
  zeta_cmd->add_option("--nu", zeta.nus, "path-loss exponents")->required()->delimiter(',');
  zeta_cmd->add_option("--reps", zeta.reps, "replicates")->required();
  zeta_cmd->add_option("--seed", zeta.seed, "stream seed");
  zeta_cmd->add_option("--intensity", zeta.intensity, "Poisson intensity");
  zeta_cmd->add_option("--window", zeta.window, "window side (>= 20)");
  zeta_cmd->add_option("--table", zeta.table, "zeta-table file to update");

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "emit asymptotic bounds and ratios");
  bounds_cmd->add_option("--config", bounds.config_path, "experiment config file")->required();
  bounds_cmd->add_option("--zeta-table", bounds.table_path, "zeta-table file")->required();
  bounds_cmd->add_option("--summary", bounds.summary_path,
                         "summary.csv with measured means (default: <out>/summary.csv)");
  bounds_cmd->add_option("--out", bounds.out_path, "output csv path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (zeta_cmd->parsed()) return run_zeta_cmd(zeta);
    if (bounds_cmd->parsed()) return run_bounds_cmd(bounds);
  } catch (const fusionscale::MissingZetaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMissingZeta;
  } catch (const fusionscale::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
