#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <tuple>

#include "fusionscale/policies.hpp"
#include "oracle_helpers.hpp"

using namespace fusionscale;

namespace {

Deployment fixed_deployment(std::vector<Point2> pts, int fc) {
  Deployment dep;
  dep.points = std::move(pts);
  dep.lambda = 1.0;
  dep.fusion_center = fc;
  dep.seed = 0;
  return dep;
}

Deployment random_deployment(std::uint64_t seed, int n, double lambda = 1.0) {
  return sample_deployment(n, lambda, PlacementPdf::uniform(), seed);
}

std::vector<std::tuple<int, int, int>> link_key(const FusionPlan& plan) {
  std::vector<std::tuple<int, int, int>> out;
  for (const auto& l : plan.links)
    out.emplace_back(l.from, l.to, static_cast<int>(l.phase));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("direct transmission") {
  SECTION("two nodes") {
    const FusionPlan plan = plan_dt(fixed_deployment({{0, 0}, {1, 0}}, 0));
    REQUIRE(plan.links.size() == 1);
    CHECK(plan.links[0].from == 1);
    CHECK(plan.links[0].to == 0);
  }
  SECTION("line energy") {
    const FusionPlan plan = plan_dt(fixed_deployment({{0, 0}, {1, 0}, {3, 0}}, 0));
    CHECK_THAT(energy(plan, 2.0).total, Catch::Matchers::WithinRel(10.0, 1e-12));
  }
  SECTION("average energy grows like n^(nu/2)") {
    const std::vector<int> sizes{50, 100, 200, 400, 800};
    std::vector<double> log_n, log_e;
    for (int n : sizes) {
      double mean = 0.0;
      const int runs = 150;
      for (int r = 0; r < runs; ++r) {
        const Deployment dep = random_deployment(hash_combine(555, n * 1000 + r), n);
        mean += energy(plan_dt(dep), 2.0).average;
      }
      log_n.push_back(std::log(n));
      log_e.push_back(std::log(mean / runs));
    }
    const double slope = oracle::fit_slope(log_n, log_e);
    CHECK(slope > 1.0 - 0.15);
    CHECK(slope < 1.0 + 0.15);
  }
}

TEST_CASE("shortest-path forwarding") {
  SECTION("line of three with relay") {
    const Deployment dep = fixed_deployment({{0, 0}, {1, 0}, {2, 0}}, 2);
    const NetworkGraph net = make_network(dep.points, NetKind::Complete);
    const FusionPlan plan = plan_sp(dep, net, 2.0);
    CHECK(link_key(plan) == std::vector<std::tuple<int, int, int>>{
                                {0, 1, 0}, {1, 2, 0}, {1, 2, 0}});
    CHECK_THAT(energy(plan, 2.0).total, Catch::Matchers::WithinRel(3.0, 1e-12));
  }
  SECTION("total equals the sum of per-source costs") {
    const Deployment dep = random_deployment(321, 40);
    const NetworkGraph net = make_network(dep.points, NetKind::Complete);
    const FusionPlan plan = plan_sp(dep, net, 2.0);
    double expected = 0.0;
    for (int i = 0; i < dep.n(); ++i)
      if (i != dep.fusion_center)
        expected += shortest_path(net, 2.0, i, dep.fusion_center).first;
    CHECK_THAT(energy(plan, 2.0).total, Catch::Matchers::WithinRel(expected, 1e-9));
  }
  SECTION("never beats aggregation, never loses to direct transmission") {
    for (std::uint64_t seed : {11u, 22u, 33u}) {
      const Deployment dep = random_deployment(seed, 30);
      const NetworkGraph net = make_network(dep.points, NetKind::Complete);
      const double sp = energy(plan_sp(dep, net, 2.0), 2.0).total;
      const double dt = energy(plan_dt(dep), 2.0).total;
      const double mst = build_emst(dep.points).power_weight(2.0);
      CHECK(sp <= dt * (1 + 1e-12));
      CHECK(sp >= mst * (1 - 1e-12));
    }
  }
  SECTION("disconnected network is rejected") {
    const Deployment dep = random_deployment(44, 12);
    NetworkGraph net = make_network(dep.points, NetKind::Complete);
    net.connected = false;
    CHECK_THROWS_AS(plan_sp(dep, net, 2.0), std::invalid_argument);
  }
}

TEST_CASE("aggregation along the directed MST") {
  SECTION("energy equals the tree's power weight") {
    const Deployment dep = random_deployment(77, 25);
    const EnergyReport report = energy(plan_mst_agg(dep), 3.0);
    CHECK_THAT(report.total,
               Catch::Matchers::WithinRel(build_emst(dep.points).power_weight(3.0), 1e-12));
    CHECK(report.forwarding == 0.0);
  }
  SECTION("unit chain") {
    const Deployment dep = fixed_deployment({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}}, 0);
    CHECK_THAT(energy(plan_mst_agg(dep), 2.0).total, Catch::Matchers::WithinRel(4.0, 1e-12));
  }
}

TEST_CASE("two-phase clique policy") {
  SECTION("empty dependency graph reduces to MST aggregation") {
    for (std::uint64_t seed : {3u, 14u, 15u, 92u}) {
      const Deployment dep = random_deployment(seed, 20);
      const NetworkGraph net = make_network(dep.points, NetKind::Complete);
      const FusionPlan agg = plan_mst_agg(dep);
      const FusionPlan two_phase = plan_dfmrf(dep, empty_dependency(dep.n()), net, 2.0);
      CHECK(link_key(two_phase) == link_key(agg));
      CHECK(energy(two_phase, 2.0).forwarding == 0.0);
    }
  }
  SECTION("one-nearest-neighbor dependency stays within twice the tree") {
    for (std::uint64_t seed : {5u, 6u, 7u, 8u, 9u}) {
      const Deployment dep = random_deployment(seed, 35);
      const NetworkGraph net = make_network(dep.points, NetKind::Complete);
      const DependencyGraph dg = build_knng(dep.points, 1);
      const double total = energy(plan_dfmrf(dep, dg, net, 2.0), 2.0).total;
      const double mst = build_emst(dep.points).power_weight(2.0);
      CHECK(total >= mst * (1 - 1e-12));
      CHECK(total <= 2.0 * mst * (1 + 1e-12));
    }
  }
  SECTION("forwarding energy matches an independent per-clique recomputation") {
    for (std::uint64_t seed : {25u, 26u, 27u}) {
      const Deployment dep = random_deployment(seed, 10);
      const NetworkGraph net = make_network(dep.points, NetKind::Complete);
      const DependencyGraph dg = build_disc(dep.points, 0.6 * dep.region_side() / 3.0);
      const FusionPlan plan = plan_dfmrf(dep, dg, net, 2.0);
      const CliqueSet cliques = maximal_cliques(dg);
      double expected_fg = 0.0;
      for (const auto& clique : cliques.cliques) {
        if (clique.size() < 2) continue;
        const int proc = choose_processor(clique, net, 2.0, ProcMode::MinCost);
        for (int member : clique)
          if (member != proc) expected_fg += shortest_path(net, 2.0, member, proc).first;
      }
      const EnergyReport report = energy(plan, 2.0);
      CHECK_THAT(report.forwarding, Catch::Matchers::WithinRel(expected_fg, 1e-9));
      CHECK_THAT(report.total,
                 Catch::Matchers::WithinRel(report.forwarding + report.aggregation, 1e-12));
    }
  }
  SECTION("upper bound by dependency edges plus the tree") {
    for (std::uint64_t seed : {41u, 42u, 43u, 44u}) {
      const Deployment dep = random_deployment(seed, 30);
      const NetworkGraph net = make_network(dep.points, NetKind::Complete);
      for (int k : {1, 2, 3}) {
        const DependencyGraph dg = build_knng(dep.points, k);
        const double total = energy(plan_dfmrf(dep, dg, net, 2.0), 2.0).total;
        const double bound = power_weight(dep.points, dg.edges, 2.0) +
                             build_emst(dep.points).power_weight(2.0);
        CHECK(total <= bound * (1 + 1e-12));
      }
    }
  }
  SECTION("size mismatch is rejected") {
    const Deployment dep = random_deployment(50, 12);
    const NetworkGraph net = make_network(dep.points, NetKind::Complete);
    CHECK_THROWS_AS(plan_dfmrf(dep, empty_dependency(11), net, 2.0), std::invalid_argument);
  }
}

TEST_CASE("energy accounting") {
  SECTION("empty plan") {
    FusionPlan plan;
    plan.points = {{0, 0}, {1, 0}};
    CHECK(energy(plan, 2.0).total == 0.0);
  }
  SECTION("matches power_weight over the link multiset") {
    const Deployment dep = random_deployment(88, 22);
    const NetworkGraph net = make_network(dep.points, NetKind::Complete);
    const FusionPlan plan = plan_sp(dep, net, 2.0);
    std::vector<std::pair<int, int>> edges;
    for (const auto& l : plan.links) edges.emplace_back(l.from, l.to);
    CHECK_THAT(energy(plan, 2.0).total,
               Catch::Matchers::WithinRel(power_weight(dep.points, edges, 2.0), 1e-12));
  }
  SECTION("average times n equals total") {
    const Deployment dep = random_deployment(89, 17);
    const EnergyReport report = energy(plan_mst_agg(dep), 2.0);
    CHECK_THAT(report.average * report.n, Catch::Matchers::WithinRel(report.total, 1e-12));
  }
}

TEST_CASE("token coverage replay") {
  SECTION("independent case delivers one singleton per node") {
    const Deployment dep = random_deployment(91, 15);
    const TokenTrace trace = verify_coverage(plan_mst_agg(dep), empty_dependency(15));
    CHECK(trace.valid());
    CHECK(trace.delivered.size() == 15);
  }
  SECTION("triangle clique delivers once") {
    const Deployment dep = fixed_deployment({{0, 0}, {1, 0}, {0.5, 0.7}, {4, 4}}, 3);
    const NetworkGraph net = make_network(dep.points, NetKind::Complete);
    const DependencyGraph dg = build_disc(dep.points, 1.5);
    const TokenTrace trace = verify_coverage(plan_dfmrf(dep, dg, net, 2.0), dg);
    CHECK(trace.valid());
  }
  SECTION("raw forwarding plans are rejected") {
    const Deployment dep = random_deployment(93, 10);
    CHECK_THROWS_AS(verify_coverage(plan_dt(dep), empty_dependency(10)),
                    std::invalid_argument);
  }
  SECTION("aggregation-only plans cannot cover joint cliques") {
    const Deployment dep = random_deployment(94, 12);
    const DependencyGraph dg = build_knng(dep.points, 1);
    const TokenTrace trace = verify_coverage(plan_mst_agg(dep), dg);
    CHECK(!trace.valid());
    CHECK(!trace.invalid_cliques.empty());
  }
  SECTION("a dropped forwarding link names the broken clique") {
    const Deployment dep = random_deployment(95, 14);
    const NetworkGraph net = make_network(dep.points, NetKind::Complete);
    const DependencyGraph dg = build_knng(dep.points, 1);
    FusionPlan plan = plan_dfmrf(dep, dg, net, 2.0);
    const auto victim = std::find_if(plan.links.begin(), plan.links.end(), [](const Link& l) {
      return l.phase == Phase::Forwarding;
    });
    REQUIRE(victim != plan.links.end());
    const int broken = victim->clique;
    plan.links.erase(victim);
    const TokenTrace trace = verify_coverage(plan, dg);
    CHECK(!trace.valid());
    REQUIRE(!trace.invalid_cliques.empty());
    CHECK(std::find(trace.invalid_cliques.begin(), trace.invalid_cliques.end(), broken) !=
          trace.invalid_cliques.end());
  }
  SECTION("random instances replay cleanly") {
    std::mt19937 rng(211);
    std::uniform_int_distribution<int> size(5, 40);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = size(rng);
      const Deployment dep = random_deployment(1000 + trial, n);
      const NetworkGraph net = make_network(dep.points, NetKind::Complete);
      DependencyGraph dg;
      switch (trial % 3) {
        case 0: dg = build_knng(dep.points, 1 + trial % 3); break;
        case 1: dg = build_disc(dep.points, 0.3 + 0.3 * (trial % 3)); break;
        default: dg = empty_dependency(n); break;
      }
      const TokenTrace trace = verify_coverage(plan_dfmrf(dep, dg, net, 2.0), dg);
      CHECK(trace.valid());
      CHECK(trace.delivered.size() == maximal_cliques(dg).cliques.size());
    }
  }
}
