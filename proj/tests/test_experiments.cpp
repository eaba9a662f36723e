#include "doctest.h"

#include <cmath>
#include <random>

#include "hafnian/experiments.hpp"
#include "hafnian/linalg.hpp"
#include "hafnian/report_json.hpp"
#include "oracles.hpp"

using namespace hafnian;

namespace {

ExperimentConfig config_for(GeneratorSpec::Kind kind, std::size_t n, std::size_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.matrix_source.kind = kind;
  c.matrix_source.n = n;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("random regular graphs are simple, regular and seed-determined") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto g = random_regular_graph(30, 3, seed);
    for (std::size_t v = 0; v < 30; ++v) CHECK(g.degree(v) == 3);
    CHECK(g.edges() == random_regular_graph(30, 3, seed).edges());
  }
  CHECK_FALSE(random_regular_graph(30, 3, 1).edges() == random_regular_graph(30, 3, 2).edges());
  CHECK_THROWS_AS(random_regular_graph(5, 3, 0), InputError);
}

TEST_CASE("line fit") {
  const auto f = fit_line({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
}

TEST_CASE("2x2 smallest singular value is half-normal") {
  auto c = config_for(GeneratorSpec::Kind::complete, 2, 20000, 9);
  c.scale = false;
  c.tail_thresholds = {0.1, 0.2};
  const auto r = smallest_sv_tail(c);
  for (const auto& p : r.cdf) {
    const double expect = std::erf(p.threshold / std::sqrt(2.0));
    const double se = std::sqrt(expect * (1 - expect) / 20000.0);
    CHECK(std::fabs(p.probability - expect) <= 3.0 * se);
  }
}

TEST_CASE("K_16 has no tiny singular values and matching graphs are less invertible") {
  const auto k = smallest_sv_tail(config_for(GeneratorSpec::Kind::complete, 16, 1000, 3));
  CHECK(k.cdf.front().threshold == 1e-8);
  CHECK(k.cdf.front().probability == 0.0);
  for (std::size_t i = 1; i < k.cdf.size(); ++i) CHECK(k.cdf[i].probability >= k.cdf[i - 1].probability);
  // compared on the raw 0/1 matrices: after doubly stochastic scaling the
  // matching keeps unit variances while K_16 drops to 1/15
  auto raw_k = config_for(GeneratorSpec::Kind::complete, 16, 1000, 3);
  raw_k.scale = false;
  auto raw_m = raw_k;
  raw_m.matrix_source.kind = GeneratorSpec::Kind::matching;
  CHECK(smallest_sv_tail(raw_m).median_smallest < smallest_sv_tail(raw_k).median_smallest);
}

TEST_CASE("smallest singular value agrees with an independent SVD") {
  std::mt19937_64 rng(81);
  for (int rep = 0; rep < 100; ++rep) {
    const SkewMatrix w = oracle::random_skew(4 + 2 * static_cast<std::size_t>(rep % 8), rng);
    const auto ref = oracle::singular_values(w);
    CHECK(spectrum(w).smallest_singular == doctest::Approx(ref.front()).epsilon(1e-8));
  }
}

TEST_CASE("eigenvalue density counts") {
  auto c = config_for(GeneratorSpec::Kind::complete, 30, 10, 4);
  c.eta_grid = {0.01, 0.1, 0.5, 100.0};
  const auto r = eigenvalue_density(c);
  CHECK(r.monotone);
  CHECK(r.rows.back().mean_count == 30.0);
  CHECK(r.rows.back().max_count == 30);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].mean_count >= r.rows[i - 1].mean_count);

  auto d = config_for(GeneratorSpec::Kind::complete, 30, 10, 4);
  const auto dr = eigenvalue_density(d);
  REQUIRE(dr.rows.size() == 8);
  CHECK(dr.rows.front().eta == doctest::Approx(std::pow(29.0, -0.2)));
  CHECK(dr.rows.back().eta == doctest::Approx(1.0));
}

TEST_CASE("regular graph density stays below twice the complete-graph baseline") {
  auto k = config_for(GeneratorSpec::Kind::complete, 100, 20, 6);
  k.eta_grid = {0.1, 0.2, 0.5, 1.0};
  auto rr = k;
  rr.matrix_source.kind = GeneratorSpec::Kind::random_regular;
  rr.matrix_source.degree = 3;
  const auto kb = eigenvalue_density(k);
  const auto rb = eigenvalue_density(rr);
  CHECK(rb.max_ratio <= 2.0 * kb.max_ratio);
}

TEST_CASE("single edge concentration error is |log chi^2_1|") {
  ExperimentConfig c;
  GeneratorSpec g;
  g.kind = GeneratorSpec::Kind::complete;
  g.n = 2;
  c.family = {g};
  c.trials = 20000;
  c.seed = 8;
  c.scale = false;
  const auto r = concentration_error(c);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].exact);
  // median of log chi^2_1 is log 0.45494 = -0.78760; median of |log chi^2_1| solves
  // F(e^t) - F(e^-t) = 1/2, t = 1.15567
  CHECK(r.rows[0].median_signed_error == doctest::Approx(-0.78760).epsilon(0.03));
  CHECK(r.rows[0].median_abs_error == doctest::Approx(1.15567).epsilon(0.03));
}

TEST_CASE("experiments are deterministic across thread counts") {
  auto c = config_for(GeneratorSpec::Kind::complete, 20, 50, 2);
  const auto a = eigenvalue_density(c);
  c.threads = 3;
  const auto b = eigenvalue_density(c);
  CHECK(dump_json(to_json(a)) == dump_json(to_json(b)));
}

TEST_CASE("config round trip and unknown keys") {
  const Json j = Json::parse(R"({"matrix_source": {"type": "random_regular", "n": 20, "d": 3}, "trials": 7})");
  const auto c = experiment_config_from_json(j);
  CHECK(c.trials == 7);
  CHECK(c.matrix_source.degree == 3);
  const auto again = experiment_config_from_json(to_json(c));
  CHECK(dump_json(to_json(again)) == dump_json(to_json(c)));
  CHECK_THROWS_AS(experiment_config_from_json(Json::parse(R"({"trails": 7})")), InputError);
  CHECK_THROWS_AS(experiment_config_from_json(Json::parse(R"({"tail_thresholds": [0.2, 0.1]})")), InputError);
}
