#pragma once

#include <cmath>
#include <vector>

namespace fusionscale {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dist_sq(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(const Point2& a, const Point2& b) {
  return std::sqrt(dist_sq(a, b));
}

// Transmission cost of a link of length d under path-loss exponent nu.
inline double power_cost(double d, double nu) {
  return std::pow(d, nu);
}

}  // namespace fusionscale
