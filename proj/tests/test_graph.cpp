#include "doctest.h"

#include <random>
#include <sstream>

#include "hafnian/experiments.hpp"
#include "hafnian/graph.hpp"
#include "hafnian/hypotheses.hpp"
#include "hafnian/scaling.hpp"
#include "oracles.hpp"

using namespace hafnian;

TEST_CASE("edge list parsing and validation") {
  std::istringstream ok("3 2\n0 1\n2 1\n");
  const auto g = read_graph(ok);
  CHECK(g.n() == 3);
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));

  for (const char* bad : {"3 1\n0 0\n", "3 2\n0 1\n1 0\n", "3 1\n0 3\n", "3 2\n0 1\n", "3 1\n0 1\n1 2\n", "x 1\n"}) {
    std::istringstream in(bad);
    CHECK_THROWS_AS(read_graph(in), InputError);
  }
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream back(out.str());
  CHECK(read_graph(back).edges() == g.edges());
}

TEST_CASE("large entries graph uses a strict threshold") {
  const SymMatrix k5 = complete_graph(5).adjacency();
  CHECK(large_entries_graph(k5, 0.0).edges() == complete_graph(5).edges());
  CHECK(large_entries_graph(k5, 1.0).edges().empty());
  const auto b = scale_symmetric(complete_graph(6).adjacency(), 1e-14).b;
  CHECK(large_entries_graph(b, 1.0 / 36.0).edges().size() == 15);
  CHECK(large_entries_graph(b, 0.25).edges().empty());
}

TEST_CASE("boundary and components") {
  const auto k4 = complete_graph(4);
  CHECK(boundary(k4, {0}) == VertexSet{1, 2, 3});
  CHECK(boundary(k4, {0, 1, 2, 3}).empty());
  CHECK(boundary(k4, {}).empty());
  CHECK(connected_components_within(k4, {0, 2, 3}) == 1);
  CHECK_THROWS_AS(boundary(k4, {4}), InputError);

  const GraphEdgeList empty(5, {});
  CHECK(connected_components_within(empty, {0, 2, 4}) == 3);
}

TEST_CASE("boundary and component invariants on random graphs") {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 50; ++rep) {
    const auto g = oracle::random_graph(10, 0.3, rng);
    const auto adj = oracle::adjacency_masks(g);
    for (std::uint64_t s = 1; s < 1024; s += 37) {
      VertexSet j;
      for (std::size_t v = 0; v < 10; ++v)
        if (s >> v & 1) j.push_back(v);
      const auto b = boundary(g, j);
      CHECK((oracle::mask_of(b) & s) == 0);
      CHECK(static_cast<int>(b.size()) == oracle::boundary_size(adj, s));
      const auto c = connected_components_within(g, j);
      CHECK(static_cast<int>(c) == oracle::components(adj, s));
      CHECK(c <= j.size());
      bool independent = true;
      for (auto u : j)
        for (auto v : j)
          if (g.has_edge(u, v)) independent = false;
      CHECK((c == j.size()) == independent);
    }
  }
}

TEST_CASE("min degree") {
  CHECK(min_degree(complete_graph(5)) == 4);
  CHECK(min_degree(GraphEdgeList(4, {{0, 1}})) == 0);
}

TEST_CASE("strong expansion examples") {
  const auto k10 = complete_graph(10);
  const auto r = check_strong_expansion(k10, 0.5, 4, CheckMode::exhaustive, 100000, 0);
  CHECK(r.holds);
  CHECK(r.checked_mode == CheckMode::exhaustive);
  CHECK(r.sets_checked == subsets_up_to(10, 4));

  const auto m = matching_graph(8);
  for (auto mode : {CheckMode::exhaustive, CheckMode::sampled}) {
    const auto rep = check_strong_expansion(m, 0.1, 2, mode, 1000, 3);
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.witness);
    CHECK_FALSE(expansion_inequality_holds(m, *rep.witness, 0.1, 1.0));
    CHECK(rep.witness->size() <= 2);
  }
  // first witness in canonical order: {0}, |d| = 1, Con = 1
  CHECK(*check_strong_expansion(m, 0.1, 2, CheckMode::exhaustive, 1000, 0).witness == VertexSet{0});

  CHECK_THROWS_AS(check_strong_expansion(k10, 0.5, 10, CheckMode::exhaustive, 100000, 0), InputError);
  CHECK_THROWS_AS(check_strong_expansion(k10, 0.5, 9, CheckMode::exhaustive, 100, 0), InputError);
}

TEST_CASE("weak expansion examples") {
  CHECK(check_weak_expansion(complete_graph(10), 0.5, 0.3, CheckMode::exhaustive, 100000, 0).holds);
  const auto e = check_weak_expansion(GraphEdgeList(6, {}), 0.1, 0.1, CheckMode::sampled, 100, 0);
  CHECK_FALSE(e.holds);
  REQUIRE(e.witness);
  CHECK(e.witness->size() == 1);
  CHECK(e.level == 3);
}

TEST_CASE("exhaustive check agrees with the brute-force oracle") {
  std::mt19937_64 rng(72);
  std::uniform_real_distribution<double> kd(0.0, 1.5);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 3 + static_cast<std::size_t>(rep % 8);
    const auto g = oracle::random_graph(n, 0.25 + 0.5 * (rep % 3) / 2.0, rng);
    const double kappa = kd(rng);
    const std::size_t level = 1 + static_cast<std::size_t>(rep) % (n - 1);
    const auto r = check_strong_expansion(g, kappa, level, CheckMode::exhaustive, 1u << 20, 0);
    CHECK(r.holds == oracle::brute_expansion(g, kappa, 1.0, level));
    if (!r.holds) {
      REQUIRE(r.witness);
      const auto adj = oracle::adjacency_masks(g);
      const auto s = oracle::mask_of(*r.witness);
      CHECK(r.witness->size() <= level);
      CHECK(oracle::boundary_size(adj, s) - oracle::components(adj, s) < kappa * double(r.witness->size()));
    }
  }
}

TEST_CASE("sampled mode never contradicts a failing exhaustive verdict when the budget covers 2^n") {
  std::mt19937_64 rng(73);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 4 + static_cast<std::size_t>(rep % 9);
    const auto g = oracle::random_graph(n, 0.4, rng);
    const std::size_t level = n / 2;
    const auto ex = check_strong_expansion(g, 0.4, level, CheckMode::exhaustive, 1u << 20, 0);
    const auto sa = check_strong_expansion(g, 0.4, level, CheckMode::sampled, std::uint64_t{1} << n, 5);
    if (!ex.holds) CHECK_FALSE(sa.holds);
    if (!sa.holds) {
      REQUIRE(sa.witness);
      CHECK_FALSE(expansion_inequality_holds(g, *sa.witness, 0.4, 1.0));
    }
  }
}

TEST_CASE("sampled mode with a small budget still finds witnesses it reports") {
  std::mt19937_64 rng(74);
  for (int rep = 0; rep < 30; ++rep) {
    const auto g = oracle::random_graph(30, 0.15, rng);
    const auto r = check_strong_expansion(g, 0.3, 10, CheckMode::sampled, 500, static_cast<std::uint64_t>(rep));
    CHECK(r.checked_mode == CheckMode::sampled);
    if (!r.holds) CHECK_FALSE(expansion_inequality_holds(g, *r.witness, 0.3, 1.0));
  }
}

TEST_CASE("edge addition preserves a passing verdict") {
  std::mt19937_64 rng(75);
  int passing = 0;
  for (int rep = 0; rep < 300 && passing < 30; ++rep) {
    const std::size_t n = 6 + static_cast<std::size_t>(rep % 5);
    const auto g = oracle::random_graph(n, 0.6, rng);
    if (!check_strong_expansion(g, 0.3, n / 2, CheckMode::exhaustive, 1u << 20, 0).holds) continue;
    ++passing;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    auto h = g;
    for (int k = 0; k < 3; ++k) {
      const auto u = pick(rng), v = pick(rng);
      if (u != v && !h.has_edge(u, v)) h = h.with_edge(u, v);
    }
    CHECK(check_strong_expansion(h, 0.3, n / 2, CheckMode::exhaustive, 1u << 20, 0).holds);
  }
  CHECK(passing == 30);
}

TEST_CASE("concentration hypotheses on complete and matching graphs") {
  HypothesisParams p;
  p.alpha = 0.5;
  p.kappa = 0.25;
  p.beta = 2.0;
  p.theta = 0.5;
  const auto k16 = check_theorem_hypotheses(complete_graph(16).adjacency(), p);
  CHECK(k16.scaled);
  CHECK(k16.degree.holds);
  CHECK(k16.expansion.holds);
  CHECK(k16.max_entry.holds);
  CHECK(k16.all_hold);
  CHECK(k16.expansion.level == default_expansion_level(16, 0.5, 0.25));

  const auto m = check_theorem_hypotheses(matching_graph(16).adjacency(), p);
  CHECK_FALSE(m.expansion.holds);
  REQUIRE(m.expansion.witness);
  CHECK_FALSE(m.all_hold);
  CHECK_FALSE(m.degree.holds);
  CHECK(m.degree.witness_vertex.has_value());
}

TEST_CASE("default expansion level") {
  CHECK(default_expansion_level(16, 0.5, 0.25) == 7);  // floor(8 / 1.0625)
  CHECK(default_expansion_level(4, 0.99, 0.1) == 1);
}
