#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fusionscale/digest.hpp"
#include "fusionscale/geometry.hpp"
#include "fusionscale/quadrature.hpp"
#include "fusionscale/rng.hpp"

// Node-placement densities on the unit square Q1 = [-1/2, 1/2]^2 and the
// seeded samplers that scale them into the deployment region.

namespace fusionscale {

// One-axis truncated exponential: a*exp(-a|z|) / (2(1 - exp(-a/2))) on
// [-1/2, 1/2]; a == 0 means the uniform limit. Positive a clusters mass
// at the center, negative a pushes it toward the boundary.
inline double truncated_exp_density(double a, double z) {
  if (z < -0.5 || z > 0.5) return 0.0;
  if (a == 0.0) return 1.0;
  return a * std::exp(-a * std::abs(z)) / (2.0 * (1.0 - std::exp(-a / 2.0)));
}

enum class PdfKind { Uniform, TruncatedExponential, Tabulated };

class PlacementPdf {
public:
  static PlacementPdf uniform() { return PlacementPdf(); }

  // a == 0 dispatches to the uniform branch (the density formula is 0/0
  // there); |a| > 50 is rejected to keep the axis density bounded.
  static PlacementPdf truncated_exponential(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("placement parameter must be finite");
    if (std::abs(a) > 50.0)
      throw std::invalid_argument("|a| > 50 puts the truncated-exponential density outside the bounded family");
    if (a == 0.0) return uniform();
    PlacementPdf pdf;
    pdf.kind_ = PdfKind::TruncatedExponential;
    pdf.a_ = a;
    pdf.check_normalization();
    return pdf;
  }

  // Piecewise-constant density given as an m x m row-major grid of cell
  // values over Q1. Must integrate to 1 and stay strictly positive.
  static PlacementPdf tabulated(std::vector<double> cell_values) {
    PlacementPdf pdf;
    const auto count = cell_values.size();
    const int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(count))));
    if (m < 1 || static_cast<std::size_t>(m) * m != count)
      throw std::invalid_argument("tabulated pdf needs a square cell grid");
    pdf.kind_ = PdfKind::Tabulated;
    pdf.grid_ = m;
    pdf.cells_ = std::move(cell_values);
    const double cell_area = 1.0 / (static_cast<double>(m) * m);
    double total = 0.0;
    pdf.cell_cdf_.resize(pdf.cells_.size());
    for (std::size_t i = 0; i < pdf.cells_.size(); ++i) {
      const double v = pdf.cells_[i];
      if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument("tabulated pdf values must be positive and finite");
      total += v * cell_area;
      pdf.cell_cdf_[i] = total;
    }
    if (std::abs(total - 1.0) > 1e-6)
      throw std::invalid_argument("tabulated pdf does not integrate to 1");
    pdf.cell_cdf_.back() = 1.0;
    return pdf;
  }

  PdfKind kind() const { return kind_; }
  double param() const { return a_; }

  double density(double x, double y) const {
    if (x < -0.5 || x > 0.5 || y < -0.5 || y > 0.5) return 0.0;
    switch (kind_) {
      case PdfKind::Uniform:
        return 1.0;
      case PdfKind::TruncatedExponential:
        return truncated_exp_density(a_, x) * truncated_exp_density(a_, y);
      case PdfKind::Tabulated:
        return cells_[cell_index(x, y)];
    }
    return 0.0;
  }

  // One draw on Q1.
  Point2 sample(SplitMix64& g) const {
    switch (kind_) {
      case PdfKind::Uniform:
        return {uniform01(g) - 0.5, uniform01(g) - 0.5};
      case PdfKind::TruncatedExponential:
        return {sample_axis(g), sample_axis(g)};
      case PdfKind::Tabulated: {
        const double u = uniform01(g);
        std::size_t lo = 0, hi = cell_cdf_.size() - 1;
        while (lo < hi) {
          const std::size_t mid = (lo + hi) / 2;
          if (cell_cdf_[mid] <= u)
            lo = mid + 1;
          else
            hi = mid;
        }
        const int cx = static_cast<int>(lo) % grid_;
        const int cy = static_cast<int>(lo) / grid_;
        const double w = 1.0 / grid_;
        return {-0.5 + (cx + uniform01(g)) * w, -0.5 + (cy + uniform01(g)) * w};
      }
    }
    return {};
  }

  // integral of density^exponent over Q1. Product densities use a 1-D
  // Gauss-Legendre rule per axis, split at the |z| kink; tabulated grids
  // sum cells exactly.
  double power_integral(double exponent) const {
    switch (kind_) {
      case PdfKind::Uniform:
        return 1.0;
      case PdfKind::TruncatedExponential: {
        const double one_dim = axis_power_integral(exponent);
        return one_dim * one_dim;
      }
      case PdfKind::Tabulated: {
        const double cell_area = 1.0 / (static_cast<double>(grid_) * grid_);
        double total = 0.0;
        for (double v : cells_) total += std::pow(v, exponent) * cell_area;
        return total;
      }
    }
    return 0.0;
  }

  std::uint64_t digest() const {
    Fnv1a h;
    h.add_u64(static_cast<std::uint64_t>(kind_));
    h.add_f64(a_);
    h.add_u64(static_cast<std::uint64_t>(grid_));
    for (double v : cells_) h.add_f64(v);
    return h.value();
  }

private:
  PlacementPdf() = default;

  int cell_index(double x, double y) const {
    int cx = static_cast<int>((x + 0.5) * grid_);
    int cy = static_cast<int>((y + 0.5) * grid_);
    if (cx >= grid_) cx = grid_ - 1;
    if (cy >= grid_) cy = grid_ - 1;
    return cy * grid_ + cx;
  }

  // Closed-form inverse CDF of the axis density; no rejection step.
  double sample_axis(SplitMix64& g) const {
    const double u = uniform01(g);
    const double c = 2.0 * (1.0 - std::exp(-a_ / 2.0));
    if (u >= 0.5) return -std::log1p(-c * (u - 0.5)) / a_;
    return std::log1p(-c * (0.5 - u)) / a_;
  }

  double axis_power_integral(double exponent) const {
    // symmetric around 0 and smooth on each half
    const auto& gl = gauss_legendre_64();
    const double a = a_;
    return 2.0 * gl.integrate(0.0, 0.5, [a, exponent](double z) {
      return std::pow(truncated_exp_density(a, z), exponent);
    });
  }

  void check_normalization() const {
    if (std::abs(axis_power_integral(1.0) - 1.0) > 1e-6)
      throw std::invalid_argument("placement density does not integrate to 1");
  }

  PdfKind kind_ = PdfKind::Uniform;
  double a_ = 0.0;
  int grid_ = 0;
  std::vector<double> cells_;
  std::vector<double> cell_cdf_;
};

// integral of tau^(1 - nu/2) over Q1, the placement factor in the scaling
// limits.
inline double pdf_power_integral(const PlacementPdf& pdf, double nu) {
  if (nu < 0.0) throw std::invalid_argument("path-loss exponent must be >= 0");
  return pdf.power_integral(1.0 - 0.5 * nu);
}

// A seeded deployment: n i.i.d. draws from the placement pdf on Q1, scaled
// into the square of side sqrt(n/lambda), plus a fusion-center index drawn
// from the same stream.
struct Deployment {
  std::vector<Point2> points;
  double lambda = 1.0;
  int fusion_center = 0;
  std::uint64_t seed = 0;

  int n() const { return static_cast<int>(points.size()); }
  double region_side() const { return std::sqrt(points.size() / lambda); }

  std::uint64_t digest() const {
    Fnv1a h;
    h.add_u64(seed);
    h.add_u64(points.size());
    h.add_f64(lambda);
    h.add_u64(static_cast<std::uint64_t>(fusion_center));
    for (const auto& p : points) {
      h.add_f64(p.x);
      h.add_f64(p.y);
    }
    return h.value();
  }
};

inline Deployment sample_deployment(int n, double lambda, const PlacementPdf& pdf,
                                    std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("deployment needs at least 2 nodes");
  if (!(lambda > 0.0)) throw std::invalid_argument("node density must be positive");
  Deployment dep;
  dep.lambda = lambda;
  dep.seed = seed;
  dep.points.reserve(n);
  SplitMix64 g = substream(seed, 0);
  const double side = std::sqrt(static_cast<double>(n) / lambda);
  for (int i = 0; i < n; ++i) {
    const Point2 unit = pdf.sample(g);
    dep.points.push_back({side * unit.x, side * unit.y});
  }
  dep.fusion_center = static_cast<int>(uniform_index(g, static_cast<std::uint64_t>(n)));
  return dep;
}

// Homogeneous Poisson sample on a centered square window; the origin is
// appended exactly once when requested.
struct PoissonSample {
  std::vector<Point2> points;
  double intensity = 0.0;
  double window_side = 0.0;
  bool includes_origin = false;
};

inline PoissonSample sample_poisson(double intensity, double window_side, bool include_origin,
                                    std::uint64_t seed) {
  if (!(intensity > 0.0)) throw std::invalid_argument("intensity must be positive");
  if (!(window_side > 0.0)) throw std::invalid_argument("window side must be positive");
  PoissonSample out;
  out.intensity = intensity;
  out.window_side = window_side;
  out.includes_origin = include_origin;
  SplitMix64 g = substream(seed, 0);
  const std::uint64_t count = sample_poisson_count(g, intensity * window_side * window_side);
  out.points.reserve(count + (include_origin ? 1 : 0));
  const double half = 0.5 * window_side;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double x = uniform_range(g, -half, half);
    const double y = uniform_range(g, -half, half);
    out.points.push_back({x, y});
  }
  if (include_origin) out.points.push_back({0.0, 0.0});
  return out;
}

}  // namespace fusionscale
