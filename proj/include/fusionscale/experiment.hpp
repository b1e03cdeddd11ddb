#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusionscale/digest.hpp"
#include "fusionscale/parallel.hpp"
#include "fusionscale/policies.hpp"
#include "fusionscale/scaling.hpp"

// Configuration-driven experiment runner: policy sweeps over deployments,
// zeta-table maintenance, and bound/ratio reports, all emitted as CSV.

namespace fusionscale {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class MissingZetaError : public std::runtime_error {
public:
  explicit MissingZetaError(const std::string& key)
      : std::runtime_error("missing zeta-table entry: " + key), key(key) {}
  std::string key;
};

struct ExperimentConfig {
  std::vector<PolicyKind> policies;
  DepKind dep = DepKind::Empty;
  std::vector<int> ks;          // dep == Knng
  std::vector<double> deltas;   // dep == Disc
  std::vector<double> a_values{0.0};
  std::vector<double> nus;
  std::vector<int> ns;
  double lambda = 1.0;
  int runs = 1;
  std::uint64_t seed = 0;
  NetKind network = NetKind::Complete;
  double network_radius = 0.0;
  ProcMode proc_mode = ProcMode::MinCost;
  double u = 1.0;
  std::string out_dir = "results";

  // placement parameters per cell; empty dep gets the single sentinel 0
  std::vector<double> dep_params() const {
    switch (dep) {
      case DepKind::Knng: {
        std::vector<double> out;
        for (int k : ks) out.push_back(k);
        return out;
      }
      case DepKind::Disc:
        return deltas;
      case DepKind::Empty:
        return {0.0};
    }
    return {0.0};
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_double(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for '" + key + "': " + s);
  }
}

inline long parse_long(const std::string& s, const std::string& key) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for '" + key + "': " + s);
  }
}

// integer list items are either plain values or first:last:step ranges
inline std::vector<int> parse_int_list(const std::string& s, const std::string& key) {
  std::vector<int> out;
  for (const auto& token : split_list(s)) {
    const auto c1 = token.find(':');
    if (c1 == std::string::npos) {
      out.push_back(static_cast<int>(parse_long(token, key)));
      continue;
    }
    const auto c2 = token.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ConfigError("range needs first:last:step in '" + key + "'");
    const long first = parse_long(token.substr(0, c1), key);
    const long last = parse_long(token.substr(c1 + 1, c2 - c1 - 1), key);
    const long step = parse_long(token.substr(c2 + 1), key);
    if (step <= 0 || last < first) throw ConfigError("bad range '" + token + "' in '" + key + "'");
    for (long v = first; v <= last; v += step) out.push_back(static_cast<int>(v));
  }
  return out;
}

inline std::vector<double> parse_double_list(const std::string& s, const std::string& key) {
  std::vector<double> out;
  for (const auto& token : split_list(s)) out.push_back(parse_double(token, key));
  return out;
}

inline PolicyKind parse_policy(const std::string& s) {
  if (s == "dt") return PolicyKind::Dt;
  if (s == "sp") return PolicyKind::Sp;
  if (s == "mst_agg") return PolicyKind::MstAgg;
  if (s == "dfmrf") return PolicyKind::Dfmrf;
  throw ConfigError("unknown policy: " + s);
}

inline std::string format_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// the value a reader of the CSV reconstructs
inline double printed_value(double v) { return std::strtod(format_g9(v).c_str(), nullptr); }

}  // namespace detail

inline void apply_config_entry(ExperimentConfig& config, const std::string& key,
                               const std::string& value) {
  using namespace detail;
  if (key == "policies") {
    config.policies.clear();
    for (const auto& token : split_list(value)) config.policies.push_back(parse_policy(token));
  } else if (key == "dep") {
    if (value == "knng")
      config.dep = DepKind::Knng;
    else if (value == "disc")
      config.dep = DepKind::Disc;
    else if (value == "empty")
      config.dep = DepKind::Empty;
    else
      throw ConfigError("unknown dependency kind: " + value);
  } else if (key == "k") {
    config.ks = parse_int_list(value, key);
  } else if (key == "delta") {
    config.deltas = parse_double_list(value, key);
  } else if (key == "a") {
    config.a_values = parse_double_list(value, key);
  } else if (key == "placement") {
    if (value == "uniform")
      config.a_values = {0.0};
    else
      throw ConfigError("unknown placement: " + value);
  } else if (key == "nu") {
    config.nus = parse_double_list(value, key);
  } else if (key == "n") {
    config.ns = parse_int_list(value, key);
  } else if (key == "lambda") {
    config.lambda = parse_double(value, key);
  } else if (key == "runs") {
    config.runs = static_cast<int>(parse_long(value, key));
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_long(value, key));
  } else if (key == "network") {
    if (value == "complete")
      config.network = NetKind::Complete;
    else if (value == "gabriel")
      config.network = NetKind::Gabriel;
    else if (value == "disc")
      config.network = NetKind::Disc;
    else
      throw ConfigError("unknown network kind: " + value);
  } else if (key == "network_radius") {
    config.network_radius = parse_double(value, key);
  } else if (key == "proc_mode") {
    if (value == "min_cost")
      config.proc_mode = ProcMode::MinCost;
    else if (value == "min_index")
      config.proc_mode = ProcMode::MinIndex;
    else
      throw ConfigError("unknown proc_mode: " + value);
  } else if (key == "u") {
    config.u = parse_double(value, key);
  } else if (key == "out") {
    config.out_dir = value;
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

inline ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    apply_config_entry(config, detail::trim(line.substr(0, eq)),
                       detail::trim(line.substr(eq + 1)));
  }
  return config;
}

inline void validate(const ExperimentConfig& config) {
  if (config.policies.empty()) throw ConfigError("policies list is empty");
  if (config.nus.empty()) throw ConfigError("nu list is empty");
  for (double nu : config.nus)
    if (nu < 0.0) throw ConfigError("nu must be >= 0");
  if (config.ns.empty()) throw ConfigError("n list is empty");
  for (int n : config.ns)
    if (n < 2) throw ConfigError("n must be >= 2");
  if (!(config.lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (config.runs < 1) throw ConfigError("runs must be >= 1");
  if (config.a_values.empty()) throw ConfigError("placement list is empty");
  for (double a : config.a_values)
    if (std::abs(a) > 50.0) throw ConfigError("|a| must be <= 50");
  if (config.dep == DepKind::Knng) {
    if (config.ks.empty()) throw ConfigError("knng dependency needs a k list");
    const int min_n = *std::min_element(config.ns.begin(), config.ns.end());
    for (int k : config.ks)
      if (k < 1 || k >= min_n) throw ConfigError("need 1 <= k <= n-1 for every configured n");
  }
  if (config.dep == DepKind::Disc) {
    if (config.deltas.empty()) throw ConfigError("disc dependency needs a delta list");
    for (double d : config.deltas)
      if (d < 0.0) throw ConfigError("delta must be >= 0");
  }
  if (config.network == NetKind::Disc && !(config.network_radius > 0.0))
    throw ConfigError("disc network needs network_radius > 0");
  if (config.u < 1.0) throw ConfigError("u must be >= 1");
}

// ---- sweep ---------------------------------------------------------------

struct SweepCell {
  double dep_param = 0.0;
  double a = 0.0;
  double nu = 0.0;
  int n = 0;
  std::string id;
};

struct SweepOutput {
  std::string raw_path;
  std::string summary_path;
  std::vector<SweepCell> cells;
  long rows_written = 0;
};

namespace detail {

struct RowValues {
  double fg = 0.0, ag = 0.0, total = 0.0, average = 0.0;
  bool flagged = false;
};

inline std::string cell_id(const ExperimentConfig& config, const SweepCell& cell) {
  std::string dep;
  switch (config.dep) {
    case DepKind::Knng: dep = "knng" + format_g(cell.dep_param); break;
    case DepKind::Disc: dep = "disc" + format_g(cell.dep_param); break;
    case DepKind::Empty: dep = "empty"; break;
  }
  return dep + "_a" + format_g(cell.a) + "_nu" + format_g(cell.nu) + "_n" +
         std::to_string(cell.n);
}

inline const char* dep_kind_name(DepKind kind) {
  switch (kind) {
    case DepKind::Knng: return "knng";
    case DepKind::Disc: return "disc";
    case DepKind::Empty: return "empty";
  }
  return "?";
}

// deployment stream id: shared by every cell with the same placement and
// size, so sweeps over nu or the dependency parameter are paired
inline std::uint64_t run_seed(const ExperimentConfig& config, int n, double a, int run) {
  Fnv1a h;
  h.add_u64(config.seed);
  h.add_u64(static_cast<std::uint64_t>(n));
  h.add_f64(config.lambda);
  h.add_f64(a);
  h.add_u64(static_cast<std::uint64_t>(run));
  return h.value();
}

}  // namespace detail

inline SweepOutput run_sweep(const ExperimentConfig& config) {
  validate(config);
  const std::vector<double> params = config.dep_params();

  SweepOutput out;
  for (double p : params)
    for (double a : config.a_values)
      for (double nu : config.nus)
        for (int n : config.ns) {
          SweepCell cell{p, a, nu, n, ""};
          cell.id = detail::cell_id(config, cell);
          out.cells.push_back(cell);
        }

  const std::size_t cell_count = out.cells.size();
  const std::size_t policy_count = config.policies.size();
  // values[cell][run][policy]
  std::vector<detail::RowValues> values(cell_count * config.runs * policy_count);
  auto slot = [&](std::size_t cell, int run, std::size_t policy) -> detail::RowValues& {
    return values[(cell * config.runs + run) * policy_count + policy];
  };
  auto cell_index = [&](std::size_t pi, std::size_t ai, std::size_t vi, std::size_t ni) {
    return ((pi * config.a_values.size() + ai) * config.nus.size() + vi) * config.ns.size() + ni;
  };

  // one task per (n, a, run): the deployment and network are shared across
  // the dependency-parameter and nu axes
  const std::size_t n_count = config.ns.size(), a_count = config.a_values.size();
  const std::int64_t tasks = static_cast<std::int64_t>(n_count * a_count) * config.runs;
  parallel_for(tasks, [&](std::int64_t task) {
    const int run = static_cast<int>(task % config.runs);
    const std::size_t ai = (task / config.runs) % a_count;
    const std::size_t ni = task / (config.runs * a_count);
    const int n = config.ns[ni];
    const double a = config.a_values[ai];
    const PlacementPdf pdf = PlacementPdf::truncated_exponential(a);
    const Deployment dep =
        sample_deployment(n, config.lambda, pdf, detail::run_seed(config, n, a, run));
    const NetworkGraph net = make_network(dep.points, config.network, config.network_radius);

    for (std::size_t pi = 0; pi < params.size(); ++pi) {
      DependencyGraph dg;
      switch (config.dep) {
        case DepKind::Knng: dg = build_knng(dep.points, static_cast<int>(params[pi])); break;
        case DepKind::Disc: dg = build_disc(dep.points, params[pi]); break;
        case DepKind::Empty: dg = empty_dependency(n); break;
      }
      for (std::size_t vi = 0; vi < config.nus.size(); ++vi) {
        const double nu = config.nus[vi];
        const std::size_t cell = cell_index(pi, ai, vi, ni);
        for (std::size_t pol = 0; pol < policy_count; ++pol) {
          detail::RowValues& row = slot(cell, run, pol);
          try {
            FusionPlan plan;
            switch (config.policies[pol]) {
              case PolicyKind::Dt: plan = plan_dt(dep); break;
              case PolicyKind::Sp: plan = plan_sp(dep, net, nu); break;
              case PolicyKind::MstAgg: plan = plan_mst_agg(dep); break;
              case PolicyKind::Dfmrf:
                plan = plan_dfmrf(dep, dg, net, nu, config.proc_mode);
                break;
            }
            const EnergyReport report = energy(plan, nu);
            row.fg = report.forwarding;
            row.ag = report.aggregation;
            row.total = report.total;
            row.average = report.average;
          } catch (const CliqueCapError&) {
            row.flagged = true;  // flag the row, keep the sweep going
          }
        }
      }
    }
  });

  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  out.raw_path = (fs::path(config.out_dir) / "raw.csv").string();
  out.summary_path = (fs::path(config.out_dir) / "summary.csv").string();

  std::ofstream raw(out.raw_path);
  if (!raw) throw std::runtime_error("cannot write " + out.raw_path);
  raw << "experiment,run,n,lambda,nu,policy,dep_kind,dep_param,a,"
         "fg_energy,ag_energy,total,average\n";

  std::ofstream summary(out.summary_path);
  if (!summary) throw std::runtime_error("cannot write " + out.summary_path);
  summary << "experiment,n,lambda,nu,policy,dep_kind,dep_param,a,runs,flagged,"
             "mean_fg,se_fg,mean_ag,se_ag,mean_total,se_total,mean_average,se_average\n";

  using detail::format_g9;
  for (std::size_t cell = 0; cell < cell_count; ++cell) {
    const SweepCell& c = out.cells[cell];
    const std::string prefix_tail = std::string(",") + std::to_string(c.n) + "," +
                                    format_g9(config.lambda) + "," + format_g9(c.nu) + ",";
    for (std::size_t pol = 0; pol < policy_count; ++pol) {
      // summary means are taken over the printed raw values so a reader
      // recomputing them from the CSV lands on the identical doubles
      std::vector<double> fg, ag, total, average;
      int flagged = 0;
      for (int run = 0; run < config.runs; ++run) {
        const detail::RowValues& row = slot(cell, run, pol);
        raw << c.id << ',' << run << prefix_tail << policy_name(config.policies[pol]) << ','
            << detail::dep_kind_name(config.dep) << ',' << format_g9(c.dep_param) << ','
            << format_g9(c.a) << ',';
        if (row.flagged) {
          raw << "nan,nan,nan,nan\n";
          ++flagged;
        } else {
          const std::string fg_s = format_g9(row.fg), ag_s = format_g9(row.ag),
                            tot_s = format_g9(row.total), avg_s = format_g9(row.average);
          raw << fg_s << ',' << ag_s << ',' << tot_s << ',' << avg_s << '\n';
          fg.push_back(std::strtod(fg_s.c_str(), nullptr));
          ag.push_back(std::strtod(ag_s.c_str(), nullptr));
          total.push_back(std::strtod(tot_s.c_str(), nullptr));
          average.push_back(std::strtod(avg_s.c_str(), nullptr));
        }
        ++out.rows_written;
      }
      auto mean_se = [](const std::vector<double>& v) -> std::pair<double, double> {
        if (v.empty()) return {0.0, 0.0};
        double mean = 0.0;
        for (double x : v) mean += x;
        mean /= v.size();
        if (v.size() < 2) return {mean, 0.0};
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return {mean, std::sqrt(ss / (v.size() - 1) / v.size())};
      };
      const auto [mfg, sfg] = mean_se(fg);
      const auto [mag, sag] = mean_se(ag);
      const auto [mtot, stot] = mean_se(total);
      const auto [mavg, savg] = mean_se(average);
      summary << c.id << prefix_tail << policy_name(config.policies[pol]) << ','
              << detail::dep_kind_name(config.dep) << ',' << format_g9(c.dep_param) << ','
              << format_g9(c.a) << ',' << (config.runs - flagged) << ',' << flagged << ','
              << format_g9(mfg) << ',' << format_g9(sfg) << ',' << format_g9(mag) << ','
              << format_g9(sag) << ',' << format_g9(mtot) << ',' << format_g9(stot) << ','
              << format_g9(mavg) << ',' << format_g9(savg) << '\n';
    }
  }
  return out;
}

// ---- zeta runner -----------------------------------------------------------

struct ZetaRunArgs {
  ZetaKind kind;
  std::vector<double> nus;
  double intensity = 1.0;
  double window_side = 50.0;
  long replicates = 1000;
  std::uint64_t seed = 42;
  std::string table_path = "zeta_table.txt";
};

inline std::vector<ZetaEstimate> run_zeta(const ZetaRunArgs& args) {
  const std::vector<ZetaEstimate> estimates = estimate_zeta_multi(
      args.kind, args.nus, args.intensity, args.window_side, args.replicates, args.seed);
  ZetaTable table = ZetaTable::load(args.table_path);
  for (const auto& est : estimates) table.upsert(est);
  table.save(args.table_path);
  return estimates;
}

// ---- bounds report ----------------------------------------------------------

struct SummaryRow {
  std::string experiment;
  int n = 0;
  double lambda = 0.0, nu = 0.0;
  std::string policy, dep_kind;
  double dep_param = 0.0, a = 0.0;
  int runs = 0, flagged = 0;
  double mean_fg = 0.0, se_fg = 0.0, mean_ag = 0.0, se_ag = 0.0;
  double mean_total = 0.0, se_total = 0.0, mean_average = 0.0, se_average = 0.0;
};

inline std::vector<SummaryRow> load_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open summary file: " + path);
  std::vector<SummaryRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> fields = [&] {
      std::vector<std::string> out;
      std::string item;
      std::istringstream ss(line);
      while (std::getline(ss, item, ',')) out.push_back(item);
      return out;
    }();
    if (fields.size() != 18) throw std::runtime_error("malformed summary row: " + line);
    SummaryRow row;
    row.experiment = fields[0];
    row.n = std::atoi(fields[1].c_str());
    row.lambda = std::atof(fields[2].c_str());
    row.nu = std::atof(fields[3].c_str());
    row.policy = fields[4];
    row.dep_kind = fields[5];
    row.dep_param = std::atof(fields[6].c_str());
    row.a = std::atof(fields[7].c_str());
    row.runs = std::atoi(fields[8].c_str());
    row.flagged = std::atoi(fields[9].c_str());
    row.mean_fg = std::atof(fields[10].c_str());
    row.se_fg = std::atof(fields[11].c_str());
    row.mean_ag = std::atof(fields[12].c_str());
    row.se_ag = std::atof(fields[13].c_str());
    row.mean_total = std::atof(fields[14].c_str());
    row.se_total = std::atof(fields[15].c_str());
    row.mean_average = std::atof(fields[16].c_str());
    row.se_average = std::atof(fields[17].c_str());
    rows.push_back(row);
  }
  return rows;
}

struct BoundsRow {
  double dep_param = 0.0, a = 0.0, nu = 0.0;
  LimitBound lower, upper, ratio;
  const ZetaEstimate* zeta_dep = nullptr;
  std::optional<SummaryRow> measured_dfmrf;
  std::optional<SummaryRow> measured_mst_agg;
};

inline std::vector<BoundsRow> compute_bounds(const ExperimentConfig& config,
                                             const ZetaTable& table,
                                             const std::vector<SummaryRow>& summary) {
  validate(config);
  const int n_max = *std::max_element(config.ns.begin(), config.ns.end());
  std::vector<BoundsRow> rows;
  for (double p : config.dep_params()) {
    for (double a : config.a_values) {
      const PlacementPdf pdf = PlacementPdf::truncated_exponential(a);
      for (double nu : config.nus) {
        BoundsRow row;
        row.dep_param = p;
        row.a = a;
        row.nu = nu;
        const ZetaEstimate* zeta_mst = table.find(ZetaKind::mst(), nu);
        if (!zeta_mst)
          throw MissingZetaError("kind=mst param=0 nu=" + detail::format_g(nu) + " intensity=1");
        row.lower = mst_limit(config.lambda, nu, pdf, *zeta_mst);
        switch (config.dep) {
          case DepKind::Knng: {
            const int k = static_cast<int>(p);
            row.zeta_dep = table.find(ZetaKind::knng(k), nu);
            if (!row.zeta_dep)
              throw MissingZetaError("kind=knng param=" + std::to_string(k) +
                                     " nu=" + detail::format_g(nu) + " intensity=1");
            row.upper =
                dfmrf_upper_knng(config.lambda, nu, config.u, k, pdf, row.zeta_dep, *zeta_mst);
            break;
          }
          case DepKind::Disc:
            row.upper = dfmrf_upper_disc(config.lambda, nu, config.u, p, pdf, *zeta_mst);
            break;
          case DepKind::Empty:
            row.upper =
                dfmrf_upper_knng(config.lambda, nu, config.u, 0, pdf, nullptr, *zeta_mst);
            break;
        }
        row.ratio = approx_ratio(row.lower, row.upper);
        for (const auto& s : summary) {
          if (s.n != n_max || !detail::near(s.nu, nu) || !detail::near(s.dep_param, p) ||
              !detail::near(s.a, a))
            continue;
          if (s.policy == "dfmrf") row.measured_dfmrf = s;
          if (s.policy == "mst_agg") row.measured_mst_agg = s;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

inline std::string write_bounds_csv(const ExperimentConfig& config,
                                    const std::vector<BoundsRow>& rows,
                                    const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  using detail::format_g9;
  out << "dep_kind,dep_param,a,nu,lambda,u,zeta_mst,zeta_mst_se,zeta_dep,zeta_dep_se,"
         "pdf_integral,mst_lower,mst_lower_se,dfmrf_upper,dfmrf_upper_se,"
         "approx_ratio,approx_ratio_se,measured_n,dfmrf_mean,dfmrf_se,mst_agg_mean,mst_agg_se\n";
  const int n_max = *std::max_element(config.ns.begin(), config.ns.end());
  for (const auto& row : rows) {
    out << detail::dep_kind_name(config.dep) << ',' << format_g9(row.dep_param) << ','
        << format_g9(row.a) << ',' << format_g9(row.nu) << ',' << format_g9(config.lambda)
        << ',' << format_g9(config.u) << ',' << format_g9(row.lower.zeta_mst) << ','
        << format_g9(row.lower.zeta_mst_se) << ',';
    if (row.zeta_dep)
      out << format_g9(row.zeta_dep->mean) << ',' << format_g9(row.zeta_dep->std_error);
    else
      out << ',';
    out << ',' << format_g9(row.lower.pdf_integral) << ',' << format_g9(row.lower.value) << ','
        << format_g9(row.lower.std_error) << ',' << format_g9(row.upper.value) << ','
        << format_g9(row.upper.std_error) << ',' << format_g9(row.ratio.value) << ','
        << format_g9(row.ratio.std_error) << ',' << n_max << ',';
    if (row.measured_dfmrf)
      out << format_g9(row.measured_dfmrf->mean_average) << ','
          << format_g9(row.measured_dfmrf->se_average);
    else
      out << ',';
    out << ',';
    if (row.measured_mst_agg)
      out << format_g9(row.measured_mst_agg->mean_average) << ','
          << format_g9(row.measured_mst_agg->se_average);
    else
      out << ',';
    out << '\n';
  }
  return out_path;
}

}  // namespace fusionscale
