#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fusionscale/placement.hpp"
#include "oracle_helpers.hpp"

using namespace fusionscale;

TEST_CASE("truncated exponential density") {
  SECTION("uniform limit at a = 0") {
    CHECK(truncated_exp_density(0.0, 0.3) == 1.0);
    CHECK(truncated_exp_density(0.0, -0.5) == 1.0);
  }
  SECTION("closed form at the center") {
    // 5 / (2 (1 - e^-2.5))
    CHECK_THAT(truncated_exp_density(5.0, 0.0),
               Catch::Matchers::WithinRel(2.72356372458463, 1e-12));
  }
  SECTION("zero outside the support") {
    CHECK(truncated_exp_density(5.0, 0.51) == 0.0);
    CHECK(truncated_exp_density(5.0, -2.0) == 0.0);
  }
  SECTION("normalizes to one") {
    for (double a : {5.0, -5.0, 1.0, -1.0, 37.0}) {
      const double total = oracle::adaptive_simpson(
          [a](double z) { return truncated_exp_density(a, z); }, -0.5, 0.5);
      CHECK_THAT(total, Catch::Matchers::WithinAbs(1.0, 1e-9));
    }
  }
}

TEST_CASE("placement pdf construction") {
  CHECK(PlacementPdf::truncated_exponential(0.0).kind() == PdfKind::Uniform);
  CHECK(PlacementPdf::truncated_exponential(5.0).kind() == PdfKind::TruncatedExponential);
  CHECK_THROWS_AS(PlacementPdf::truncated_exponential(50.5), std::invalid_argument);
  CHECK_THROWS_AS(PlacementPdf::truncated_exponential(-51.0), std::invalid_argument);
  CHECK_THROWS_AS(PlacementPdf::truncated_exponential(std::nan("")), std::invalid_argument);

  SECTION("tabulated grids validate") {
    CHECK_THROWS_AS(PlacementPdf::tabulated({1.0, 1.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(PlacementPdf::tabulated({2.0, 2.0, 2.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(PlacementPdf::tabulated({0.0, 2.0, 1.0, 1.0}), std::invalid_argument);
    const PlacementPdf pdf = PlacementPdf::tabulated({0.5, 1.5, 1.5, 0.5});
    CHECK_THAT(pdf.power_integral(1.0), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK(pdf.density(-0.4, -0.4) == 0.5);
    CHECK(pdf.density(0.4, -0.4) == 1.5);
  }
}

TEST_CASE("pdf power integral") {
  const PlacementPdf uniform = PlacementPdf::uniform();
  CHECK(pdf_power_integral(uniform, 0.0) == 1.0);
  CHECK(pdf_power_integral(uniform, 4.0) == 1.0);

  SECTION("matches the adaptive-quadrature oracle") {
    const double frozen = 2.69725647903;  // tau_5 at nu = 4, computed by the oracle
    const PlacementPdf clustered = PlacementPdf::truncated_exponential(5.0);
    CHECK_THAT(pdf_power_integral(clustered, 4.0), Catch::Matchers::WithinRel(frozen, 1e-9));
    const double one_dim = oracle::adaptive_simpson(
        [](double z) { return 1.0 / truncated_exp_density(5.0, z); }, -0.5, 0.5);
    CHECK_THAT(pdf_power_integral(clustered, 4.0),
               Catch::Matchers::WithinRel(one_dim * one_dim, 1e-9));
  }

  SECTION("clustered and spread-out integrals coincide") {
    for (double nu : {1.0, 3.0, 4.0, 6.0}) {
      const double plus = pdf_power_integral(PlacementPdf::truncated_exponential(5.0), nu);
      const double minus = pdf_power_integral(PlacementPdf::truncated_exponential(-5.0), nu);
      CHECK_THAT(plus, Catch::Matchers::WithinRel(minus, 1e-9));
    }
  }

  SECTION("uniform is extremal") {
    for (double a : {-5.0, -1.0, 1.0, 5.0}) {
      const PlacementPdf pdf = PlacementPdf::truncated_exponential(a);
      for (double nu : {3.0, 4.0, 6.0}) CHECK(pdf_power_integral(pdf, nu) >= 1.0);
      CHECK(pdf_power_integral(pdf, 1.0) <= 1.0);
    }
  }

  CHECK_THROWS_AS(pdf_power_integral(uniform, -1.0), std::invalid_argument);
}

TEST_CASE("deployment sampling") {
  const PlacementPdf uniform = PlacementPdf::uniform();
  CHECK_THROWS_AS(sample_deployment(1, 1.0, uniform, 7), std::invalid_argument);
  CHECK_THROWS_AS(sample_deployment(10, 0.0, uniform, 7), std::invalid_argument);

  SECTION("deterministic regeneration") {
    const Deployment a = sample_deployment(64, 2.0, uniform, 1234);
    const Deployment b = sample_deployment(64, 2.0, uniform, 1234);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      CHECK(a.points[i].x == b.points[i].x);
      CHECK(a.points[i].y == b.points[i].y);
    }
    CHECK(a.fusion_center == b.fusion_center);
    CHECK(a.digest() == b.digest());
  }

  SECTION("support scales with sqrt(n/lambda)") {
    for (const auto& [n, lambda] : std::vector<std::pair<int, double>>{
             {4, 1.0}, {100, 1.0}, {190, 4.0}, {50, 0.25}}) {
      for (double a : {0.0, 5.0, -5.0}) {
        const Deployment dep =
            sample_deployment(n, lambda, PlacementPdf::truncated_exponential(a), 99 + n);
        const double half = 0.5 * std::sqrt(n / lambda);
        CHECK(dep.fusion_center >= 0);
        CHECK(dep.fusion_center < n);
        for (const auto& p : dep.points) {
          CHECK(std::abs(p.x) <= half);
          CHECK(std::abs(p.y) <= half);
        }
      }
    }
  }

  SECTION("clustered axis mean matches quadrature") {
    const PlacementPdf clustered = PlacementPdf::truncated_exponential(5.0);
    SplitMix64 g = substream(2024, 0);
    const int draws = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
      const double x = std::abs(clustered.sample(g).x);
      sum += x;
      sum_sq += x * x;
    }
    const double mean = sum / draws;
    const double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
    const double expected = oracle::adaptive_simpson(
        [](double z) { return std::abs(z) * truncated_exp_density(5.0, z); }, -0.5, 0.5);
    CHECK_THAT(mean, Catch::Matchers::WithinAbs(expected, 3.0 * se));
  }

  SECTION("tabulated sampling hits cell masses") {
    const PlacementPdf pdf = PlacementPdf::tabulated({0.5, 1.5, 1.5, 0.5});
    SplitMix64 g = substream(77, 0);
    const int draws = 40000;
    int low_cells = 0;
    for (int i = 0; i < draws; ++i) {
      const Point2 p = pdf.sample(g);
      const bool left = p.x < 0.0, bottom = p.y < 0.0;
      if ((left && bottom) || (!left && !bottom)) ++low_cells;  // the 0.5-mass diagonal
    }
    const double frac = static_cast<double>(low_cells) / draws;
    const double se = std::sqrt(0.25 * 0.75 / draws);
    CHECK_THAT(frac, Catch::Matchers::WithinAbs(0.25, 3.0 * se));
  }
}

TEST_CASE("poisson window sampling") {
  CHECK_THROWS_AS(sample_poisson(0.0, 10.0, false, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_poisson(1.0, -1.0, false, 1), std::invalid_argument);

  SECTION("origin appended exactly once") {
    const PoissonSample with = sample_poisson(1.0, 6.0, true, 5);
    REQUIRE(with.includes_origin);
    REQUIRE(!with.points.empty());
    CHECK(with.points.back().x == 0.0);
    CHECK(with.points.back().y == 0.0);
    int at_origin = 0;
    for (const auto& p : with.points)
      if (p.x == 0.0 && p.y == 0.0) ++at_origin;
    CHECK(at_origin == 1);

    const PoissonSample without = sample_poisson(1.0, 6.0, false, 5);
    for (const auto& p : without.points) CHECK((p.x != 0.0 || p.y != 0.0));
  }

  SECTION("count statistics") {
    const double intensity = 2.0, side = 8.0;
    const double mean = intensity * side * side;
    const int reps = 1000;
    double total = 0.0;
    for (int r = 0; r < reps; ++r)
      total += static_cast<double>(sample_poisson(intensity, side, false, 9000 + r).points.size());
    const double observed = total / reps;
    const double se = std::sqrt(mean / reps);
    CHECK_THAT(observed, Catch::Matchers::WithinAbs(mean, 3.0 * se));
  }

  SECTION("points stay in the window") {
    const PoissonSample s = sample_poisson(1.5, 12.0, false, 31);
    for (const auto& p : s.points) {
      CHECK(std::abs(p.x) <= 6.0);
      CHECK(std::abs(p.y) <= 6.0);
    }
  }
}
