#pragma once

// Brute-force reference implementations used as oracles. Everything here
// is deliberately independent of the library's algorithms: exhaustive
// enumeration and naive summation only.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "fusionscale/geometry.hpp"

namespace oracle {

using fusionscale::Point2;

inline double edge_len(const std::vector<Point2>& pts, int a, int b) {
  return std::sqrt((pts[a].x - pts[b].x) * (pts[a].x - pts[b].x) +
                   (pts[a].y - pts[b].y) * (pts[a].y - pts[b].y));
}

inline std::vector<Point2> random_points(std::mt19937& rng, int n, double box) {
  std::uniform_real_distribution<double> coord(-box / 2, box / 2);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = {coord(rng), coord(rng)};
  return pts;
}

// k-NNG by full neighbor sort, ties toward the lower index.
inline std::set<std::pair<int, int>> knng_edges(const std::vector<Point2>& pts, int k) {
  const int n = static_cast<int>(pts.size());
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<double, int>> order;
    for (int j = 0; j < n; ++j)
      if (j != i) order.emplace_back(edge_len(pts, i, j), j);
    std::sort(order.begin(), order.end());
    for (int t = 0; t < k; ++t)
      edges.insert({std::min(i, order[t].second), std::max(i, order[t].second)});
  }
  return edges;
}

inline std::set<std::pair<int, int>> disc_edges(const std::vector<Point2>& pts, double delta) {
  const int n = static_cast<int>(pts.size());
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge_len(pts, i, j) <= delta) edges.insert({i, j});
  return edges;
}

inline std::set<std::pair<int, int>> gabriel_edges(const std::vector<Point2>& pts) {
  const int n = static_cast<int>(pts.size());
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Point2 mid{(pts[i].x + pts[j].x) / 2, (pts[i].y + pts[j].y) / 2};
      const double r = edge_len(pts, i, j) / 2;
      bool open_disc_empty = true;
      for (int m = 0; m < n; ++m) {
        if (m == i || m == j) continue;
        const double dx = pts[m].x - mid.x, dy = pts[m].y - mid.y;
        if (std::sqrt(dx * dx + dy * dy) < r) {
          open_disc_empty = false;
          break;
        }
      }
      if (open_disc_empty) edges.insert({i, j});
    }
  }
  return edges;
}

// Decodes a Pruefer sequence into the labelled tree's edge list.
inline std::vector<std::pair<int, int>> prufer_decode(const std::vector<int>& seq, int n) {
  std::vector<int> degree(n, 1);
  for (int v : seq) ++degree[v];
  std::vector<std::pair<int, int>> edges;
  std::set<int> leaves;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  std::vector<int> rest = seq;
  for (int v : rest) {
    const int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    if (--degree[v] == 1) leaves.insert(v);
  }
  const int a = *leaves.begin();
  const int b = *std::next(leaves.begin());
  edges.emplace_back(std::min(a, b), std::max(a, b));
  return edges;
}

// Minimum of sum(|e|^nu) over every labelled spanning tree (n^(n-2) of
// them via Pruefer enumeration).
inline double min_spanning_power(const std::vector<Point2>& pts, double nu) {
  const int n = static_cast<int>(pts.size());
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> seq(n - 2, 0);
  for (;;) {
    const auto edges = prufer_decode(seq, n);
    double total = 0.0;
    for (const auto& [a, b] : edges) total += std::pow(edge_len(pts, a, b), nu);
    best = std::min(best, total);
    int pos = n - 3;
    while (pos >= 0 && seq[pos] == n - 1) seq[pos--] = 0;
    if (pos < 0) break;
    ++seq[pos];
  }
  return best;
}

// Maximal cliques by scanning all vertex subsets.
inline std::vector<std::vector<int>> maximal_cliques(int n,
                                                     const std::set<std::pair<int, int>>& edges) {
  auto adjacent = [&](int a, int b) {
    return edges.count({std::min(a, b), std::max(a, b)}) > 0;
  };
  std::vector<std::vector<int>> cliques;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> members;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) members.push_back(v);
    bool complete = true;
    for (std::size_t i = 0; i < members.size() && complete; ++i)
      for (std::size_t j = i + 1; j < members.size() && complete; ++j)
        if (!adjacent(members[i], members[j])) complete = false;
    if (!complete) continue;
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v) {
      if (mask & (1u << v)) continue;
      bool extends = true;
      for (int m : members)
        if (!adjacent(v, m)) {
          extends = false;
          break;
        }
      if (extends) maximal = false;
    }
    if (maximal) cliques.push_back(members);
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

// Minimum nu-power path cost by exhaustive simple-path enumeration.
inline double min_path_cost(const std::vector<Point2>& pts,
                            const std::set<std::pair<int, int>>& edges, double nu, int src,
                            int dst) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> used(n, 0);
  std::function<void(int, double)> dfs = [&](int u, double cost) {
    if (cost >= best) return;
    if (u == dst) {
      best = cost;
      return;
    }
    used[u] = 1;
    for (int v : adj[u])
      if (!used[v]) dfs(v, cost + std::pow(edge_len(pts, u, v), nu));
    used[u] = 0;
  };
  dfs(src, 0.0);
  return best;
}

// Adaptive Simpson quadrature, the independent check on the fixed-order
// Gauss-Legendre rule.
inline double adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                               double tol = 1e-10, int depth = 24) {
  const double mid = 0.5 * (lo + hi);
  const double flo = f(lo), fmid = f(mid), fhi = f(hi);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  std::function<double(double, double, double, double, double, double, int)> recurse =
      [&](double a, double b, double fa, double fb, double fm, double acc, int d) -> double {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (d <= 0 || std::abs(left + right - acc) < 15.0 * tol)
      return left + right + (left + right - acc) / 15.0;
    return recurse(a, m, fa, fm, flm, left, d - 1) + recurse(m, b, fm, fb, frm, right, d - 1);
  };
  return recurse(lo, hi, flo, fhi, fmid, whole, depth);
}

// Ordinary least squares slope of y on x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
