#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fusionscale/digest.hpp"
#include "fusionscale/geometry.hpp"

// Euclidean dependency and network graphs over a point set, plus the
// spanning-tree and shortest-path machinery the fusion policies run on.

namespace fusionscale {

enum class DepKind { Knng, Disc, Empty };

struct DependencyGraph {
  int n = 0;
  DepKind kind = DepKind::Empty;
  int k = 0;          // Knng only
  double delta = 0.0; // Disc only
  std::vector<std::pair<int, int>> edges;  // unordered pairs, first < second

  std::uint64_t digest() const {
    Fnv1a h;
    h.add_u64(static_cast<std::uint64_t>(n));
    h.add_u64(static_cast<std::uint64_t>(kind));
    h.add_u64(static_cast<std::uint64_t>(k));
    h.add_f64(delta);
    for (const auto& [a, b] : edges) {
      h.add_u64(static_cast<std::uint64_t>(a));
      h.add_u64(static_cast<std::uint64_t>(b));
    }
    return h.value();
  }
};

namespace detail {

inline void sort_unique(std::vector<std::pair<int, int>>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
}

inline void require_distinct(const std::vector<Point2>& pts) {
  std::vector<Point2> sorted = pts;
  std::sort(sorted.begin(), sorted.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].x == sorted[i - 1].x && sorted[i].y == sorted[i - 1].y)
      throw std::invalid_argument(
          "duplicate points: zero-length edges are not representable, jitter or dedupe first");
}

}  // namespace detail

// Undirected union of the directed k-nearest-neighbor relations. Distance
// ties break toward the lower vertex index so rebuilds are identical.
inline DependencyGraph build_knng(const std::vector<Point2>& pts, int k) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw std::invalid_argument("k-NNG needs at least 2 points");
  if (k < 1 || k >= n) throw std::invalid_argument("k-NNG requires 1 <= k <= n-1");
  DependencyGraph g;
  g.n = n;
  g.kind = DepKind::Knng;
  g.k = k;
  g.edges.reserve(static_cast<std::size_t>(n) * k);
  std::vector<std::pair<double, int>> cand(n - 1);
  for (int i = 0; i < n; ++i) {
    int m = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) cand[m++] = {dist_sq(pts[i], pts[j]), j};
    std::partial_sort(cand.begin(), cand.begin() + k, cand.end());
    for (int t = 0; t < k; ++t) {
      const int j = cand[t].second;
      g.edges.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  detail::sort_unique(g.edges);
  return g;
}

// Edge iff pairwise distance <= delta (closed threshold).
inline DependencyGraph build_disc(const std::vector<Point2>& pts, double delta) {
  if (delta < 0.0) throw std::invalid_argument("disc radius must be >= 0");
  const int n = static_cast<int>(pts.size());
  DependencyGraph g;
  g.n = n;
  g.kind = DepKind::Disc;
  g.delta = delta;
  const double d2 = delta * delta;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist_sq(pts[i], pts[j]) <= d2) g.edges.emplace_back(i, j);
  return g;
}

inline DependencyGraph empty_dependency(int n) {
  DependencyGraph g;
  g.n = n;
  g.kind = DepKind::Empty;
  return g;
}

struct SpanningTree {
  struct Edge {
    int a = 0;
    int b = 0;
    double length = 0.0;
  };
  int n = 0;
  std::vector<Edge> edges;  // n-1 entries

  double power_weight(double nu) const {
    double total = 0.0;
    for (const auto& e : edges) total += power_cost(e.length, nu);
    return total;
  }
};

// Euclidean minimum spanning tree, quadratic Prim. Minimizing total length
// also minimizes every nu-power total for nu > 0 since x -> x^nu is
// monotone on the sorted distinct edge lengths.
inline SpanningTree build_emst(const std::vector<Point2>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw std::invalid_argument("spanning tree needs at least 2 points");
  detail::require_distinct(pts);
  SpanningTree tree;
  tree.n = n;
  tree.edges.reserve(n - 1);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<int> attach(n, 0);
  std::vector<char> in_tree(n, 0);
  in_tree[0] = 1;
  for (int j = 1; j < n; ++j) best[j] = dist_sq(pts[0], pts[j]);
  for (int added = 1; added < n; ++added) {
    int pick = -1;
    double pick_key = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (!in_tree[j] && best[j] < pick_key) {
        pick_key = best[j];
        pick = j;
      }
    }
    in_tree[pick] = 1;
    const int from = attach[pick];
    tree.edges.push_back({std::min(from, pick), std::max(from, pick), std::sqrt(pick_key)});
    for (int j = 0; j < n; ++j) {
      if (!in_tree[j]) {
        const double d = dist_sq(pts[pick], pts[j]);
        if (d < best[j]) {
          best[j] = d;
          attach[j] = pick;
        }
      }
    }
  }
  std::sort(tree.edges.begin(), tree.edges.end(), [](const auto& x, const auto& y) {
    return x.a < y.a || (x.a == y.a && x.b < y.b);
  });
  return tree;
}

struct DirectedTree {
  int root = 0;
  std::vector<int> parent;  // parent[root] == root
};

// Orients every tree edge along the unique path toward root.
inline DirectedTree orient_to_root(const SpanningTree& tree, int root) {
  const int n = tree.n;
  if (root < 0 || root >= n) throw std::invalid_argument("root index out of range");
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : tree.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  DirectedTree out;
  out.root = root;
  out.parent.assign(n, -1);
  out.parent[root] = root;
  std::vector<int> stack{root};
  int seen = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (out.parent[v] < 0) {
        out.parent[v] = u;
        stack.push_back(v);
        ++seen;
      }
    }
  }
  if (seen != n) throw std::invalid_argument("tree is not connected");
  return out;
}

enum class NetKind { Complete, Gabriel, Disc };

// Feasible-communication graph. Complete nets keep no explicit adjacency;
// the others carry neighbor lists. A valid network graph must contain the
// EMST, which also certifies connectivity.
struct NetworkGraph {
  NetKind kind = NetKind::Complete;
  double radius = 0.0;  // Disc only
  std::vector<Point2> points;
  bool connected = true;
  std::vector<std::vector<int>> adj;

  int n() const { return static_cast<int>(points.size()); }

  bool has_edge(int i, int j) const {
    if (i == j) return false;
    if (kind == NetKind::Complete) return true;
    const auto& row = adj[i];
    return std::find(row.begin(), row.end(), j) != row.end();
  }
};

// Gabriel edge (i,j): the open disc on diameter ij holds no other point,
// i.e. no m with |im|^2 + |jm|^2 < |ij|^2.
inline std::vector<std::pair<int, int>> gabriel_edges(const std::vector<Point2>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double dij = dist_sq(pts[i], pts[j]);
      bool blocked = false;
      for (int m = 0; m < n && !blocked; ++m) {
        if (m == i || m == j) continue;
        if (dist_sq(pts[i], pts[m]) + dist_sq(pts[j], pts[m]) < dij) blocked = true;
      }
      if (!blocked) edges.emplace_back(i, j);
    }
  }
  return edges;
}

inline NetworkGraph make_network(const std::vector<Point2>& pts, NetKind kind,
                                 double radius = 0.0) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) throw std::invalid_argument("network graph needs at least 2 points");
  detail::require_distinct(pts);
  NetworkGraph net;
  net.kind = kind;
  net.radius = radius;
  net.points = pts;
  if (kind == NetKind::Complete) {
    net.connected = true;
    return net;
  }
  std::vector<std::pair<int, int>> edges;
  if (kind == NetKind::Gabriel) {
    edges = gabriel_edges(pts);
  } else {
    if (radius < 0.0) throw std::invalid_argument("network disc radius must be >= 0");
    const double r2 = radius * radius;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (dist_sq(pts[i], pts[j]) <= r2) edges.emplace_back(i, j);
  }
  net.adj.assign(n, {});
  for (const auto& [a, b] : edges) {
    net.adj[a].push_back(b);
    net.adj[b].push_back(a);
  }
  for (auto& row : net.adj) std::sort(row.begin(), row.end());
  const SpanningTree emst = build_emst(pts);
  net.connected = true;
  for (const auto& e : emst.edges) {
    if (!net.has_edge(e.a, e.b)) {
      net.connected = false;
      break;
    }
  }
  return net;
}

inline NetworkGraph build_gabriel(const std::vector<Point2>& pts) {
  return make_network(pts, NetKind::Gabriel);
}

// Single-source shortest paths under nu-power edge weights. Cost ties are
// resolved toward the lexicographically smallest vertex sequence, which is
// well defined because edge weights are strictly positive.
struct ShortestPathTree {
  int source = 0;
  double nu = 0.0;
  std::vector<double> cost;
  std::vector<int> parent;  // parent[source] == source, -1 if unreached

  std::vector<int> path_to(int dst) const {
    std::vector<int> path;
    if (dst < 0 || dst >= static_cast<int>(parent.size()) || parent[dst] < 0) return path;
    for (int v = dst; v != source; v = parent[v]) path.push_back(v);
    path.push_back(source);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

namespace detail {

// true when the path (source..u, v) precedes the incumbent path to v
inline bool lex_improves(const ShortestPathTree& t, int u, int v) {
  std::vector<int> cand = t.path_to(u);
  cand.push_back(v);
  const std::vector<int> cur = t.path_to(v);
  return std::lexicographical_compare(cand.begin(), cand.end(), cur.begin(), cur.end());
}

inline void relax(ShortestPathTree& t, int u, int v, double w) {
  const double cand = t.cost[u] + w;
  if (cand < t.cost[v]) {
    t.cost[v] = cand;
    t.parent[v] = u;
  } else if (cand == t.cost[v] && t.parent[v] >= 0 && lex_improves(t, u, v)) {
    t.parent[v] = u;
  }
}

}  // namespace detail

inline ShortestPathTree shortest_paths_from(const NetworkGraph& net, double nu, int src) {
  const int n = net.n();
  if (src < 0 || src >= n) throw std::invalid_argument("source index out of range");
  if (nu < 0.0) throw std::invalid_argument("path-loss exponent must be >= 0");
  ShortestPathTree t;
  t.source = src;
  t.nu = nu;
  t.cost.assign(n, std::numeric_limits<double>::infinity());
  t.parent.assign(n, -1);
  t.cost[src] = 0.0;
  t.parent[src] = src;
  std::vector<char> settled(n, 0);
  if (net.kind == NetKind::Complete) {
    for (int round = 0; round < n; ++round) {
      int u = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int v = 0; v < n; ++v)
        if (!settled[v] && t.cost[v] < best) {
          best = t.cost[v];
          u = v;
        }
      if (u < 0) break;
      settled[u] = 1;
      for (int v = 0; v < n; ++v) {
        if (settled[v] || v == u) continue;
        detail::relax(t, u, v, power_cost(dist(net.points[u], net.points[v]), nu));
      }
    }
  } else {
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, src});
    while (!heap.empty()) {
      const auto [c, u] = heap.top();
      heap.pop();
      if (settled[u]) continue;
      settled[u] = 1;
      for (int v : net.adj[u]) {
        if (settled[v]) continue;
        const double before = t.cost[v];
        detail::relax(t, u, v, power_cost(dist(net.points[u], net.points[v]), nu));
        if (t.cost[v] < before) heap.push({t.cost[v], v});
      }
    }
  }
  return t;
}

inline std::pair<double, std::vector<int>> shortest_path(const NetworkGraph& net, double nu,
                                                         int src, int dst) {
  if (dst < 0 || dst >= net.n()) throw std::invalid_argument("destination index out of range");
  if (src == dst) return {0.0, {src}};
  const ShortestPathTree t = shortest_paths_from(net, nu, src);
  if (t.parent[dst] < 0) throw std::invalid_argument("network graph is not connected");
  return {t.cost[dst], t.path_to(dst)};
}

// Sum of nu-th powers of edge lengths; multiset edges count with
// multiplicity.
inline double power_weight(const std::vector<Point2>& pts,
                           const std::vector<std::pair<int, int>>& edges, double nu) {
  if (nu < 0.0) throw std::invalid_argument("path-loss exponent must be >= 0");
  double total = 0.0;
  for (const auto& [a, b] : edges) total += power_cost(dist(pts[a], pts[b]), nu);
  return total;
}

inline double power_weight(const SpanningTree& tree, double nu) {
  if (nu < 0.0) throw std::invalid_argument("path-loss exponent must be >= 0");
  return tree.power_weight(nu);
}

}  // namespace fusionscale
