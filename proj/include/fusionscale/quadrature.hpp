#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fusionscale {

// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
// on the Legendre recurrence.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    nodes.resize(order);
    weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= order; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = -x;
      nodes[order - 1 - i] = x;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      weights[i] = w;
      weights[order - 1 - i] = w;
    }
  }

  // integral of f over [lo, hi]
  template <class F>
  double integrate(double lo, double hi, F&& f) const {
    const double mid = 0.5 * (lo + hi);
    const double scale = 0.5 * (hi - lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      sum += weights[i] * f(mid + scale * nodes[i]);
    return scale * sum;
  }
};

inline const GaussLegendre& gauss_legendre_64() {
  static const GaussLegendre table(64);
  return table;
}

}  // namespace fusionscale
