#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fusionscale/geograph.hpp"

// Maximal-clique enumeration for dependency graphs, and per-clique
// processor selection for the forwarding phase.

namespace fusionscale {

// Geometric dependency graphs stay far below this; hitting it means the
// graph is in the dense regime where no scalable policy exists anyway.
inline constexpr std::size_t kCliqueCap = 1'000'000;

class CliqueCapError : public std::runtime_error {
public:
  CliqueCapError()
      : std::runtime_error("maximal-clique count exceeded the cap; "
                           "dependency graph is in the non-scalable dense regime") {}
};

struct CliqueSet {
  std::vector<std::vector<int>> cliques;  // each sorted ascending; list sorted lexicographically
  std::uint64_t source_graph_hash = 0;
};

namespace detail {

class BronKerbosch {
public:
  explicit BronKerbosch(const DependencyGraph& g) : n_(g.n), matrix_(static_cast<std::size_t>(g.n) * g.n, 0) {
    for (const auto& [a, b] : g.edges) {
      matrix_[static_cast<std::size_t>(a) * n_ + b] = 1;
      matrix_[static_cast<std::size_t>(b) * n_ + a] = 1;
    }
  }

  std::vector<std::vector<int>> run() {
    std::vector<int> r;
    std::vector<int> p(n_);
    for (int i = 0; i < n_; ++i) p[i] = i;
    expand(r, p, {});
    return std::move(out_);
  }

private:
  bool adjacent(int a, int b) const { return matrix_[static_cast<std::size_t>(a) * n_ + b] != 0; }

  void expand(std::vector<int>& r, std::vector<int> p, std::vector<int> x) {
    if (p.empty() && x.empty()) {
      if (out_.size() >= kCliqueCap) throw CliqueCapError();
      out_.push_back(r);
      return;
    }
    // pivot maximizing |P ∩ N(u)| trims the branch set
    int pivot = -1, best = -1;
    for (const std::vector<int>* pool : {&p, &x}) {
      for (int u : *pool) {
        int cnt = 0;
        for (int v : p)
          if (adjacent(u, v)) ++cnt;
        if (cnt > best) {
          best = cnt;
          pivot = u;
        }
      }
    }
    std::vector<int> branch;
    for (int v : p)
      if (pivot < 0 || !adjacent(pivot, v)) branch.push_back(v);
    for (int v : branch) {
      std::vector<int> p2, x2;
      for (int w : p)
        if (adjacent(v, w)) p2.push_back(w);
      for (int w : x)
        if (adjacent(v, w)) x2.push_back(w);
      r.push_back(v);
      expand(r, std::move(p2), std::move(x2));
      r.pop_back();
      p.erase(std::find(p.begin(), p.end(), v));
      x.push_back(v);
    }
  }

  int n_;
  std::vector<std::uint8_t> matrix_;
  std::vector<std::vector<int>> out_;
};

}  // namespace detail

// Exact enumeration in canonical order. Isolated vertices come out as
// singleton cliques, so the clique set always covers every vertex.
inline CliqueSet maximal_cliques(const DependencyGraph& g) {
  if (g.n < 0) throw std::invalid_argument("graph size must be >= 0");
  CliqueSet out;
  out.source_graph_hash = g.digest();
  if (g.n == 0) return out;
  detail::BronKerbosch bk(g);
  out.cliques = bk.run();
  for (auto& c : out.cliques) std::sort(c.begin(), c.end());
  std::sort(out.cliques.begin(), out.cliques.end());
  return out;
}

enum class ProcMode { MinCost, MinIndex };

// Processor choice given a per-pair shortest-path cost callable.
// MinCost minimizes the members' total forwarding cost; ties and MinIndex
// both resolve to the smallest index.
inline int choose_processor_with(const std::vector<int>& clique,
                                 const std::function<double(int, int)>& sp_cost, ProcMode mode) {
  if (clique.empty()) throw std::invalid_argument("clique must be non-empty");
  if (mode == ProcMode::MinIndex || clique.size() == 1)
    return *std::min_element(clique.begin(), clique.end());
  std::vector<int> members = clique;
  std::sort(members.begin(), members.end());
  int best = members.front();
  double best_sum = std::numeric_limits<double>::infinity();
  for (int m : members) {
    double sum = 0.0;
    for (int i : members)
      if (i != m) sum += sp_cost(i, m);
    if (sum < best_sum) {
      best_sum = sum;
      best = m;
    }
  }
  return best;
}

inline int choose_processor(const std::vector<int>& clique, const NetworkGraph& net, double nu,
                            ProcMode mode = ProcMode::MinCost) {
  return choose_processor_with(
      clique,
      [&](int i, int m) { return shortest_path(net, nu, i, m).first; },
      mode);
}

}  // namespace fusionscale
