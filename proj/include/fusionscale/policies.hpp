#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fusionscale/cliques.hpp"
#include "fusionscale/geograph.hpp"
#include "fusionscale/placement.hpp"

// Fusion-policy digraphs: direct transmission, shortest-path forwarding,
// aggregation along the directed MST, and the two-phase clique policy.
// Plans are unordered link multisets; transmission order never matters for
// the energy totals.

namespace fusionscale {

enum class PolicyKind { Dt, Sp, MstAgg, Dfmrf };

inline const char* policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Dt: return "dt";
    case PolicyKind::Sp: return "sp";
    case PolicyKind::MstAgg: return "mst_agg";
    case PolicyKind::Dfmrf: return "dfmrf";
  }
  return "?";
}

enum class Phase { Forwarding, Aggregation };

// One scheduled transmission. Forwarding links carry the payload tag
// (which clique the data serves and which member it originated from) so a
// plan can be replayed without re-deriving routes.
struct Link {
  int from = 0;
  int to = 0;
  Phase phase = Phase::Forwarding;
  int clique = -1;  // forwarding payload: clique id, -1 for raw-to-sink policies
  int origin = -1;  // forwarding payload: originating member
};

struct FusionPlan {
  PolicyKind policy_kind = PolicyKind::Dt;
  int fusion_center = 0;
  std::vector<Point2> points;
  std::vector<Link> links;  // multiset: repeated transmissions repeat entries
  std::uint64_t deployment_digest = 0;

  int n() const { return static_cast<int>(points.size()); }
};

struct EnergyReport {
  double total = 0.0;
  double forwarding = 0.0;
  double aggregation = 0.0;
  double average = 0.0;  // total / n
  PolicyKind policy_kind = PolicyKind::Dt;
  int n = 0;
  double nu = 0.0;
};

inline EnergyReport energy(const FusionPlan& plan, double nu) {
  if (nu < 0.0) throw std::invalid_argument("path-loss exponent must be >= 0");
  EnergyReport report;
  report.policy_kind = plan.policy_kind;
  report.n = plan.n();
  report.nu = nu;
  for (const Link& link : plan.links) {
    const double w = power_cost(dist(plan.points[link.from], plan.points[link.to]), nu);
    if (link.phase == Phase::Forwarding)
      report.forwarding += w;
    else
      report.aggregation += w;
  }
  report.total = report.forwarding + report.aggregation;
  report.average = report.n > 0 ? report.total / report.n : 0.0;
  return report;
}

// Every node transmits straight to the fusion center.
inline FusionPlan plan_dt(const Deployment& dep) {
  FusionPlan plan;
  plan.policy_kind = PolicyKind::Dt;
  plan.fusion_center = dep.fusion_center;
  plan.points = dep.points;
  plan.deployment_digest = dep.digest();
  for (int i = 0; i < dep.n(); ++i)
    if (i != dep.fusion_center)
      plan.links.push_back({i, dep.fusion_center, Phase::Forwarding, -1, i});
  return plan;
}

// Raw data rides the cheapest multihop route; shared hops repeat once per
// source since nothing is combined en route. Routes come from the
// fusion-center-rooted shortest-path tree.
inline FusionPlan plan_sp(const Deployment& dep, const NetworkGraph& net, double nu) {
  if (!net.connected) throw std::invalid_argument("network graph is not connected");
  FusionPlan plan;
  plan.policy_kind = PolicyKind::Sp;
  plan.fusion_center = dep.fusion_center;
  plan.points = dep.points;
  plan.deployment_digest = dep.digest();
  const ShortestPathTree tree = shortest_paths_from(net, nu, dep.fusion_center);
  for (int i = 0; i < dep.n(); ++i) {
    if (i == dep.fusion_center) continue;
    for (int v = i; v != dep.fusion_center; v = tree.parent[v])
      plan.links.push_back({v, tree.parent[v], Phase::Forwarding, -1, i});
  }
  return plan;
}

namespace detail {

inline void append_dmst_links(FusionPlan& plan, const Deployment& dep) {
  const SpanningTree emst = build_emst(dep.points);
  const DirectedTree dmst = orient_to_root(emst, dep.fusion_center);
  for (int v = 0; v < dep.n(); ++v)
    if (v != dep.fusion_center)
      plan.links.push_back({v, dmst.parent[v], Phase::Aggregation, -1, v});
}

}  // namespace detail

// Running-sum aggregation along the directed MST: each node sends one
// combined value to its successor, n-1 links in total.
inline FusionPlan plan_mst_agg(const Deployment& dep) {
  if (dep.n() < 2) throw std::invalid_argument("aggregation needs at least 2 nodes");
  FusionPlan plan;
  plan.policy_kind = PolicyKind::MstAgg;
  plan.fusion_center = dep.fusion_center;
  plan.points = dep.points;
  plan.deployment_digest = dep.digest();
  detail::append_dmst_links(plan, dep);
  return plan;
}

// Two phases: per maximal clique, members route raw data to the clique
// processor (forwarding), then everyone aggregates the computed terms
// along the directed MST (aggregation). With an empty dependency graph the
// forwarding phase vanishes and the plan collapses to plan_mst_agg.
inline FusionPlan plan_dfmrf(const Deployment& dep, const DependencyGraph& dg,
                             const NetworkGraph& net, double nu,
                             ProcMode proc_mode = ProcMode::MinCost) {
  if (!net.connected) throw std::invalid_argument("network graph is not connected");
  if (dg.n != dep.n()) throw std::invalid_argument("dependency graph size mismatch");
  FusionPlan plan;
  plan.policy_kind = PolicyKind::Dfmrf;
  plan.fusion_center = dep.fusion_center;
  plan.points = dep.points;
  plan.deployment_digest = dep.digest();

  const CliqueSet cliques = maximal_cliques(dg);
  std::unordered_map<int, ShortestPathTree> routes;  // per forwarding source
  auto route_from = [&](int src) -> const ShortestPathTree& {
    auto it = routes.find(src);
    if (it == routes.end()) it = routes.emplace(src, shortest_paths_from(net, nu, src)).first;
    return it->second;
  };
  for (std::size_t c = 0; c < cliques.cliques.size(); ++c) {
    const std::vector<int>& members = cliques.cliques[c];
    if (members.size() < 2) continue;  // singleton potentials cost nothing to form
    const int proc = choose_processor_with(
        members, [&](int i, int m) { return route_from(i).cost[m]; }, proc_mode);
    for (int member : members) {
      if (member == proc) continue;
      const std::vector<int> path = route_from(member).path_to(proc);
      for (std::size_t h = 0; h + 1 < path.size(); ++h)
        plan.links.push_back(
            {path[h], path[h + 1], Phase::Forwarding, static_cast<int>(c), member});
    }
  }
  detail::append_dmst_links(plan, dep);
  return plan;
}

// Replay record: how often each clique's term reached the fusion center.
struct TokenTrace {
  std::vector<int> delivered;      // per canonical clique id
  std::vector<int> invalid_cliques;

  bool valid() const {
    if (!invalid_cliques.empty()) return false;
    for (int c : delivered)
      if (c != 1) return false;
    return true;
  }
};

// Replays the plan's token flow against the dependency graph: each clique
// term is created at its processor iff every member's raw data arrived
// there over the tagged forwarding links, then terms ride the aggregation
// tree to the fusion center.
inline TokenTrace verify_coverage(const FusionPlan& plan, const DependencyGraph& dg) {
  if (plan.policy_kind != PolicyKind::MstAgg && plan.policy_kind != PolicyKind::Dfmrf)
    throw std::invalid_argument("coverage replay expects an aggregating plan");
  if (dg.n != plan.n()) throw std::invalid_argument("dependency graph size mismatch");

  const CliqueSet cliques = maximal_cliques(dg);
  const int n = plan.n();
  const std::size_t num_cliques = cliques.cliques.size();
  TokenTrace trace;
  trace.delivered.assign(num_cliques, 0);

  // forwarding links grouped by (clique, origin)
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> groups;
  bool stray_forwarding = false;
  for (const Link& link : plan.links) {
    if (link.phase != Phase::Forwarding) continue;
    if (link.clique < 0 || link.clique >= static_cast<int>(num_cliques) || link.origin < 0) {
      stray_forwarding = true;
      continue;
    }
    groups[{link.clique, link.origin}].emplace_back(link.from, link.to);
  }

  // walk a tagged link group as a single path starting at origin
  auto terminal_of = [](int origin, std::vector<std::pair<int, int>> hops) -> int {
    int cur = origin;
    while (!hops.empty()) {
      bool stepped = false;
      for (std::size_t i = 0; i < hops.size(); ++i) {
        if (hops[i].first == cur) {
          cur = hops[i].second;
          hops[i] = hops.back();
          hops.pop_back();
          stepped = true;
          break;
        }
      }
      if (!stepped) return -1;  // broken chain or leftover links
    }
    return cur;
  };

  // processor per clique, -1 when the forwarding phase is inconsistent
  std::vector<int> processor(num_cliques, -1);
  for (std::size_t c = 0; c < num_cliques; ++c) {
    const std::vector<int>& members = cliques.cliques[c];
    int proc = -1;
    bool ok = true;
    std::vector<int> senders;
    for (int member : members) {
      auto it = groups.find({static_cast<int>(c), member});
      if (it == groups.end()) continue;
      senders.push_back(member);
      const int term = terminal_of(member, it->second);
      if (term < 0 || std::find(members.begin(), members.end(), term) == members.end()) {
        ok = false;
        break;
      }
      if (proc < 0)
        proc = term;
      else if (proc != term)
        ok = false;
    }
    if (ok) {
      if (members.size() == 1) {
        proc = members.front();
      } else if (proc < 0) {
        ok = false;  // nobody forwarded anything
      } else {
        // everyone but the processor must have sent
        for (int member : members)
          if (member != proc &&
              std::find(senders.begin(), senders.end(), member) == senders.end())
            ok = false;
      }
    }
    if (ok)
      processor[c] = proc;
    else
      trace.invalid_cliques.push_back(static_cast<int>(c));
  }

  // aggregation tree: one outgoing link per node except the sink
  std::vector<int> next(n, -1);
  bool tree_ok = !stray_forwarding;
  for (const Link& link : plan.links) {
    if (link.phase != Phase::Aggregation) continue;
    if (next[link.from] >= 0) tree_ok = false;  // duplicate transmission
    next[link.from] = link.to;
  }
  if (next[plan.fusion_center] >= 0) tree_ok = false;

  std::vector<int> reaches(n, -1);  // -1 unknown, 0 no, 1 yes
  std::function<int(int)> reaches_sink = [&](int v) -> int {
    if (v == plan.fusion_center) return 1;
    if (reaches[v] >= 0) return reaches[v];
    reaches[v] = 0;  // provisional: cycles resolve to "no"
    const int r = (next[v] >= 0) ? reaches_sink(next[v]) : 0;
    reaches[v] = r;
    return r;
  };

  for (std::size_t c = 0; c < num_cliques; ++c) {
    if (processor[c] < 0) continue;
    if (tree_ok && reaches_sink(processor[c]))
      trace.delivered[c] += 1;
    else
      trace.invalid_cliques.push_back(static_cast<int>(c));
  }
  std::sort(trace.invalid_cliques.begin(), trace.invalid_cliques.end());
  trace.invalid_cliques.erase(
      std::unique(trace.invalid_cliques.begin(), trace.invalid_cliques.end()),
      trace.invalid_cliques.end());
  return trace;
}

}  // namespace fusionscale
