#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fusionscale/geograph.hpp"
#include "fusionscale/parallel.hpp"
#include "fusionscale/placement.hpp"
#include "fusionscale/quadrature.hpp"

// Monte-Carlo estimators for the scaling constants (half the expected
// nu-power edge sum incident to the origin of a unit-intensity Poisson
// process plus the origin), and the asymptotic energy bounds built from
// them.

namespace fusionscale {

enum class ZetaGraphKind { Mst, Knng, Disc };

struct ZetaKind {
  ZetaGraphKind graph = ZetaGraphKind::Mst;
  int k = 0;          // Knng
  double delta = 0.0; // Disc

  static ZetaKind mst() { return {ZetaGraphKind::Mst, 0, 0.0}; }
  static ZetaKind knng(int k) {
    if (k < 1) throw std::invalid_argument("k-NNG zeta needs k >= 1");
    return {ZetaGraphKind::Knng, k, 0.0};
  }
  static ZetaKind disc(double delta) {
    if (delta < 0.0) throw std::invalid_argument("disc zeta needs delta >= 0");
    return {ZetaGraphKind::Disc, 0, delta};
  }

  double param() const { return graph == ZetaGraphKind::Knng ? k : delta; }
};

struct ZetaEstimate {
  ZetaKind kind;
  double nu = 0.0;
  double intensity = 1.0;
  double mean = 0.0;
  double std_error = 0.0;
  long replicates = 0;
  double window_side = 0.0;
  std::uint64_t seed = 0;
  long resampled = 0;  // empty-window redraws
};

namespace detail {

// nu-power edge lengths incident to the origin for one Poisson replicate.
// The origin sits at the last index of the sample.
inline std::vector<double> origin_incident_lengths(const ZetaKind& kind,
                                                   const std::vector<Point2>& pts) {
  const int n = static_cast<int>(pts.size());
  const int origin = n - 1;
  std::vector<double> lengths;
  switch (kind.graph) {
    case ZetaGraphKind::Mst: {
      const SpanningTree tree = build_emst(pts);
      for (const auto& e : tree.edges)
        if (e.a == origin || e.b == origin) lengths.push_back(e.length);
      break;
    }
    case ZetaGraphKind::Knng: {
      const int k = kind.k;
      std::vector<char> neighbor(n, 0);
      // the origin's own k nearest
      std::vector<std::pair<double, int>> cand;
      cand.reserve(n - 1);
      for (int j = 0; j < origin; ++j) cand.emplace_back(dist_sq(pts[origin], pts[j]), j);
      const int take = std::min<int>(k, static_cast<int>(cand.size()));
      std::partial_sort(cand.begin(), cand.begin() + take, cand.end());
      for (int t = 0; t < take; ++t) neighbor[cand[t].second] = 1;
      // points that count the origin among their own k nearest; ties break
      // toward the lower index, and the origin is the highest index
      for (int j = 0; j < origin; ++j) {
        if (neighbor[j]) continue;
        const double dj0 = dist_sq(pts[j], pts[origin]);
        int closer = 0;
        for (int m = 0; m < origin && closer < k; ++m)
          if (m != j && dist_sq(pts[j], pts[m]) <= dj0) ++closer;
        if (closer < k) neighbor[j] = 1;
      }
      for (int j = 0; j < origin; ++j)
        if (neighbor[j]) lengths.push_back(dist(pts[origin], pts[j]));
      break;
    }
    case ZetaGraphKind::Disc: {
      const double d2 = kind.delta * kind.delta;
      for (int j = 0; j < origin; ++j)
        if (dist_sq(pts[origin], pts[j]) <= d2) lengths.push_back(dist(pts[origin], pts[j]));
      break;
    }
  }
  return lengths;
}

}  // namespace detail

// One pass over shared replicates serves every requested exponent; the
// graph build dominates, the per-edge power sums are free by comparison.
inline std::vector<ZetaEstimate> estimate_zeta_multi(const ZetaKind& kind,
                                                     const std::vector<double>& nus,
                                                     double intensity, double window_side,
                                                     long replicates, std::uint64_t seed) {
  if (!(intensity > 0.0)) throw std::invalid_argument("intensity must be positive");
  if (window_side < 20.0)
    throw std::invalid_argument("window side below the stabilization margin (>= 20)");
  if (replicates < 1) throw std::invalid_argument("need at least one replicate");
  if (nus.empty()) throw std::invalid_argument("need at least one exponent");
  for (double nu : nus)
    if (nu < 0.0) throw std::invalid_argument("path-loss exponent must be >= 0");

  std::vector<std::vector<double>> values(nus.size(), std::vector<double>(replicates));
  std::vector<long> redraws(replicates, 0);
  parallel_for(replicates, [&](std::int64_t rep) {
    const std::uint64_t rep_seed = hash_combine(seed, static_cast<std::uint64_t>(rep));
    PoissonSample sample;
    long attempts = 0;
    do {
      sample = sample_poisson(intensity, window_side, true,
                              hash_combine(rep_seed, static_cast<std::uint64_t>(attempts)));
      ++attempts;
    } while (sample.points.size() < 2);  // origin needs at least one companion
    redraws[rep] = attempts - 1;
    const std::vector<double> lengths = detail::origin_incident_lengths(kind, sample.points);
    for (std::size_t vi = 0; vi < nus.size(); ++vi) {
      double sum = 0.0;
      for (double len : lengths) sum += power_cost(len, nus[vi]);
      values[vi][rep] = 0.5 * sum;
    }
  });

  std::vector<ZetaEstimate> out;
  out.reserve(nus.size());
  long total_redraws = 0;
  for (long r : redraws) total_redraws += r;
  for (std::size_t vi = 0; vi < nus.size(); ++vi) {
    ZetaEstimate est;
    est.kind = kind;
    est.nu = nus[vi];
    est.intensity = intensity;
    est.replicates = replicates;
    est.window_side = window_side;
    est.seed = seed;
    est.resampled = total_redraws;
    double mean = 0.0;
    for (double v : values[vi]) mean += v;
    mean /= replicates;
    double ss = 0.0;
    for (double v : values[vi]) ss += (v - mean) * (v - mean);
    est.mean = mean;
    est.std_error = replicates > 1 ? std::sqrt(ss / (replicates - 1) / replicates) : 0.0;
    out.push_back(est);
  }
  return out;
}

inline ZetaEstimate estimate_zeta(const ZetaKind& kind, double nu, double intensity,
                                  double window_side, long replicates, std::uint64_t seed) {
  return estimate_zeta_multi(kind, {nu}, intensity, window_side, replicates, seed).front();
}

// ---- zeta-table file -------------------------------------------------
//
// Line format: kind param nu intensity mean stderr replicates seed

namespace detail {

inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline const char* zeta_kind_name(ZetaGraphKind g) {
  switch (g) {
    case ZetaGraphKind::Mst: return "mst";
    case ZetaGraphKind::Knng: return "knng";
    case ZetaGraphKind::Disc: return "disc";
  }
  return "?";
}

inline bool near(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace detail

class ZetaTable {
public:
  static ZetaTable load(const std::string& path) {
    ZetaTable table;
    std::ifstream in(path);
    if (!in) return table;  // absent file reads as empty
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      std::string kind_token;
      double param = 0;
      ZetaEstimate est;
      long long seed_value = 0;
      if (!(row >> kind_token >> param >> est.nu >> est.intensity >> est.mean >>
            est.std_error >> est.replicates >> seed_value))
        throw std::runtime_error("malformed zeta-table line: " + line);
      est.seed = static_cast<std::uint64_t>(seed_value);
      if (kind_token == "mst")
        est.kind = ZetaKind::mst();
      else if (kind_token == "knng")
        est.kind = ZetaKind::knng(static_cast<int>(std::lround(param)));
      else if (kind_token == "disc")
        est.kind = ZetaKind::disc(param);
      else
        throw std::runtime_error("unknown zeta kind: " + kind_token);
      table.entries_.push_back(est);
    }
    return table;
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write zeta table: " + path);
    out << "# fusionscale zeta-table v1\n";
    out << "# kind param nu intensity mean stderr replicates seed\n";
    for (const auto& est : entries_) {
      out << detail::zeta_kind_name(est.kind.graph) << ' '
          << detail::format_g9(est.kind.param()) << ' ' << detail::format_g9(est.nu) << ' '
          << detail::format_g9(est.intensity) << ' ' << detail::format_g9(est.mean) << ' '
          << detail::format_g9(est.std_error) << ' ' << est.replicates << ' ' << est.seed
          << '\n';
    }
  }

  // best entry (most replicates) for the requested constant
  const ZetaEstimate* find(const ZetaKind& kind, double nu, double intensity = 1.0) const {
    const ZetaEstimate* best = nullptr;
    for (const auto& est : entries_) {
      if (est.kind.graph != kind.graph) continue;
      if (!detail::near(est.kind.param(), kind.param())) continue;
      if (!detail::near(est.nu, nu) || !detail::near(est.intensity, intensity)) continue;
      if (!best || est.replicates > best->replicates) best = &est;
    }
    return best;
  }

  // replaces the row with the same cache key, else appends
  void upsert(const ZetaEstimate& est) {
    for (auto& existing : entries_) {
      if (existing.kind.graph == est.kind.graph &&
          detail::near(existing.kind.param(), est.kind.param()) &&
          detail::near(existing.nu, est.nu) && detail::near(existing.intensity, est.intensity) &&
          existing.replicates == est.replicates && existing.seed == est.seed) {
        existing = est;
        return;
      }
    }
    entries_.push_back(est);
  }

  const std::vector<ZetaEstimate>& entries() const { return entries_; }

private:
  std::vector<ZetaEstimate> entries_;
};

// ---- asymptotic bounds -------------------------------------------------

enum class BoundKind { MstLower, DfmrfUpperKnng, DfmrfUpperDisc, ApproxRatio };

struct LimitBound {
  BoundKind kind = BoundKind::MstLower;
  double value = 0.0;
  double std_error = 0.0;
  double lambda = 1.0;
  double nu = 0.0;
  double u = 1.0;
  std::uint64_t pdf_digest = 0;
  double pdf_integral = 1.0;      // integral of tau^(1 - nu/2)
  double zeta_mst = 0.0;
  double zeta_mst_se = 0.0;
  double dep_term = 0.0;          // forwarding-phase share of the bound value
  double dep_term_se = 0.0;
};

namespace detail {

inline void require_unit_intensity(const ZetaEstimate& est) {
  if (!near(est.intensity, 1.0))
    throw std::invalid_argument("limit formulas take zeta constants at unit intensity");
}

}  // namespace detail

// lambda^(-nu/2) * zeta(nu; MST) * integral(tau^(1-nu/2))
inline LimitBound mst_limit(double lambda, double nu, const PlacementPdf& pdf,
                            const ZetaEstimate& zeta_mst) {
  if (!(lambda > 0.0)) throw std::invalid_argument("node density must be positive");
  if (zeta_mst.kind.graph != ZetaGraphKind::Mst || !detail::near(zeta_mst.nu, nu))
    throw std::invalid_argument("zeta estimate does not match the requested MST constant");
  detail::require_unit_intensity(zeta_mst);
  LimitBound bound;
  bound.kind = BoundKind::MstLower;
  bound.lambda = lambda;
  bound.nu = nu;
  bound.u = 1.0;
  bound.pdf_digest = pdf.digest();
  bound.pdf_integral = pdf_power_integral(pdf, nu);
  bound.zeta_mst = zeta_mst.mean;
  bound.zeta_mst_se = zeta_mst.std_error;
  const double scale = std::pow(lambda, -0.5 * nu) * bound.pdf_integral;
  bound.value = scale * zeta_mst.mean;
  bound.std_error = scale * zeta_mst.std_error;
  return bound;
}

// lambda^(-nu/2) * [u zeta(nu; k-NNG) + zeta(nu; MST)] * integral(tau^(1-nu/2)).
// k == 0 is the independent-case sentinel: no forwarding term, the bound
// collapses to the MST limit.
inline LimitBound dfmrf_upper_knng(double lambda, double nu, double u, int k,
                                   const PlacementPdf& pdf, const ZetaEstimate* zeta_knng,
                                   const ZetaEstimate& zeta_mst) {
  if (u < 1.0) throw std::invalid_argument("energy stretch factor must be >= 1");
  if (k < 0) throw std::invalid_argument("k must be >= 0");
  LimitBound bound = mst_limit(lambda, nu, pdf, zeta_mst);
  bound.kind = BoundKind::DfmrfUpperKnng;
  bound.u = u;
  if (k == 0) return bound;
  if (!zeta_knng) throw std::invalid_argument("k > 0 needs a k-NNG zeta estimate");
  if (zeta_knng->kind.graph != ZetaGraphKind::Knng || zeta_knng->kind.k != k ||
      !detail::near(zeta_knng->nu, nu))
    throw std::invalid_argument("zeta estimate does not match the requested k-NNG constant");
  detail::require_unit_intensity(*zeta_knng);
  const double scale = std::pow(lambda, -0.5 * nu) * bound.pdf_integral;
  bound.dep_term = scale * u * zeta_knng->mean;
  bound.dep_term_se = scale * u * zeta_knng->std_error;
  bound.value += bound.dep_term;
  bound.std_error = std::hypot(bound.std_error, bound.dep_term_se);
  return bound;
}

// Expected nu-power sum over disc-graph edges incident to the origin of a
// Poisson process: intensity * 2*pi*delta^(nu+2) / (nu+2).
inline double disc_origin_power_expectation(double intensity, double delta, double nu) {
  if (delta < 0.0) throw std::invalid_argument("disc radius must be >= 0");
  return intensity * 2.0 * M_PI * std::pow(delta, nu + 2.0) / (nu + 2.0);
}

// Disc-dependency upper bound; the forwarding term uses the closed-form
// ring integral, which folds the placement weighting into integral(tau^2).
inline LimitBound dfmrf_upper_disc(double lambda, double nu, double u, double delta,
                                   const PlacementPdf& pdf, const ZetaEstimate& zeta_mst) {
  if (u < 1.0) throw std::invalid_argument("energy stretch factor must be >= 1");
  LimitBound bound = mst_limit(lambda, nu, pdf, zeta_mst);
  bound.kind = BoundKind::DfmrfUpperDisc;
  bound.u = u;
  bound.dep_term =
      0.5 * u * disc_origin_power_expectation(lambda, delta, nu) * pdf.power_integral(2.0);
  bound.dep_term_se = 0.0;
  bound.value += bound.dep_term;
  return bound;
}

struct MonteCarloValue {
  double value = 0.0;
  double std_error = 0.0;
};

// Monte-Carlo cross-check of the disc forwarding term: a tensor quadrature
// over placement positions, each node estimating the local Poisson disc
// expectation by sampling. Kept as an oracle for the closed form.
inline MonteCarloValue disc_forwarding_term_mc(double lambda, double nu, double u, double delta,
                                               const PlacementPdf& pdf, long replicates,
                                               std::uint64_t seed) {
  if (!(lambda > 0.0)) throw std::invalid_argument("node density must be positive");
  if (delta < 0.0) throw std::invalid_argument("disc radius must be >= 0");
  if (replicates < 2) throw std::invalid_argument("need at least two replicates per node");
  if (delta == 0.0) return {0.0, 0.0};
  static const GaussLegendre gl(8);
  std::vector<double> axis_nodes, axis_weights;
  for (double half : {-1.0, 1.0}) {  // split each axis at the density kink
    const double lo = half < 0 ? -0.5 : 0.0;
    const double hi = half < 0 ? 0.0 : 0.5;
    const double mid = 0.5 * (lo + hi), scale = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      axis_nodes.push_back(mid + scale * gl.nodes[i]);
      axis_weights.push_back(scale * gl.weights[i]);
    }
  }
  const std::size_t per_axis = axis_nodes.size();
  const std::size_t node_count = per_axis * per_axis;
  std::vector<double> node_mean(node_count, 0.0), node_se(node_count, 0.0),
      node_weight(node_count, 0.0);
  parallel_for(static_cast<std::int64_t>(node_count), [&](std::int64_t idx) {
    const std::size_t ix = idx % per_axis, iy = idx / per_axis;
    const double tau = pdf.density(axis_nodes[ix], axis_nodes[iy]);
    node_weight[idx] = axis_weights[ix] * axis_weights[iy] * tau;
    const double local_intensity = lambda * tau;
    const double mean_count = local_intensity * 4.0 * delta * delta;
    double sum = 0.0, sum_sq = 0.0;
    for (long rep = 0; rep < replicates; ++rep) {
      SplitMix64 g = substream(hash_combine(seed, idx), static_cast<std::uint64_t>(rep));
      const std::uint64_t count = sample_poisson_count(g, mean_count);
      double v = 0.0;
      for (std::uint64_t i = 0; i < count; ++i) {
        const double x = uniform_range(g, -delta, delta);
        const double y = uniform_range(g, -delta, delta);
        const double r2 = x * x + y * y;
        if (r2 <= delta * delta) v += std::pow(std::sqrt(r2), nu);
      }
      sum += v;
      sum_sq += v * v;
    }
    node_mean[idx] = sum / replicates;
    const double var = (sum_sq - sum * sum / replicates) / (replicates - 1);
    node_se[idx] = std::sqrt(std::max(var, 0.0) / replicates);
  });
  MonteCarloValue out;
  double var_sum = 0.0;
  for (std::size_t idx = 0; idx < node_count; ++idx) {
    out.value += node_weight[idx] * node_mean[idx];
    var_sum += node_weight[idx] * node_weight[idx] * node_se[idx] * node_se[idx];
  }
  out.value *= 0.5 * u;
  out.std_error = 0.5 * u * std::sqrt(var_sum);
  return out;
}

// rho = upper / lower for matching (lambda, nu, placement).
inline LimitBound approx_ratio(const LimitBound& lower, const LimitBound& upper) {
  if (lower.kind != BoundKind::MstLower)
    throw std::invalid_argument("ratio denominator must be the MST lower bound");
  if (upper.kind != BoundKind::DfmrfUpperKnng && upper.kind != BoundKind::DfmrfUpperDisc)
    throw std::invalid_argument("ratio numerator must be a DFMRF upper bound");
  if (!detail::near(lower.lambda, upper.lambda) || !detail::near(lower.nu, upper.nu) ||
      lower.pdf_digest != upper.pdf_digest)
    throw std::invalid_argument("bounds computed for different configurations");
  LimitBound ratio;
  ratio.kind = BoundKind::ApproxRatio;
  ratio.lambda = lower.lambda;
  ratio.nu = lower.nu;
  ratio.u = upper.u;
  ratio.pdf_digest = lower.pdf_digest;
  ratio.pdf_integral = lower.pdf_integral;
  ratio.zeta_mst = lower.zeta_mst;
  ratio.zeta_mst_se = lower.zeta_mst_se;
  ratio.dep_term = upper.dep_term;
  ratio.dep_term_se = upper.dep_term_se;
  ratio.value = upper.value / lower.value;
  // rho - 1 = dep_term / lower: the shared MST factor cancels
  const double l = lower.value;
  const double from_dep = upper.dep_term_se / l;
  const double from_mst =
      l > 0.0 ? upper.dep_term * lower.std_error / (l * l) : 0.0;
  ratio.std_error = std::hypot(from_dep, from_mst);
  return ratio;
}

}  // namespace fusionscale
