#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "hafnian/experiments.hpp"
#include "hafnian/hafnian_exact.hpp"
#include "oracles.hpp"

using namespace hafnian;

TEST_CASE("complete graph hafnian is (n-1)!!") {
  for (std::size_t n = 2; n <= 16; n += 2) {
    const auto h = count_perfect_matchings(complete_graph(n));
    REQUIRE(h.value_if_small);
    CHECK(*h.value_if_small == oracle::double_factorial_odd(n));
    CHECK(h.log_value == doctest::Approx(std::log(oracle::double_factorial_odd(n))));
  }
}

TEST_CASE("weighted hafnian agrees with brute-force pairing enumeration") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::bernoulli_distribution keep(0.7);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + 2 * (rep % 5);
    SymMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (keep(rng)) a.set(i, j, u(rng));
    const double ref = oracle::brute_hafnian(a);
    const auto h = hafnian_exact(a);
    if (ref == 0.0) {
      CHECK(std::isinf(h.log_value));
    } else {
      CHECK(std::exp(h.log_value) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("hafnian is invariant under vertex relabeling") {
  std::mt19937_64 rng(22);
  const auto g = random_regular_graph(12, 4, 5);
  const SymMatrix a = g.adjacency();
  std::vector<std::size_t> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  CHECK(hafnian_exact(a).log_value == doctest::Approx(hafnian_exact(a.permuted(perm)).log_value));
}

TEST_CASE("a perfect matching graph has exactly one perfect matching") {
  const auto h = count_perfect_matchings(matching_graph(10));
  CHECK(*h.value_if_small == 1.0);
}

TEST_CASE("odd size and the dimension cap are rejected") {
  CHECK_THROWS_AS(hafnian_exact(complete_graph(5).adjacency()), InputError);
  CHECK_THROWS_AS(hafnian_exact(complete_graph(8).adjacency(), 6), InputError);
}

TEST_CASE("graphs without a perfect matching have zero hafnian") {
  // star on 4 vertices
  const GraphEdgeList star(4, {{0, 1}, {0, 2}, {0, 3}});
  const auto h = count_perfect_matchings(star);
  CHECK(std::isinf(h.log_value));
  REQUIRE(h.value_if_small);
  CHECK(*h.value_if_small == 0.0);
  CHECK_FALSE(matching_exists(star));
}

TEST_CASE("maximum matching size agrees with the hafnian on random graphs") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 2 + 2 * (rep % 6);
    const auto g = oracle::random_graph(n, 0.3, rng);
    const auto mate = maximum_matching(g);
    std::size_t matched = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (mate[v] < 0) continue;
      ++matched;
      CHECK(g.has_edge(v, static_cast<std::size_t>(mate[v])));
      CHECK(mate[static_cast<std::size_t>(mate[v])] == static_cast<long>(v));
    }
    const bool perfect = oracle::brute_hafnian(g.adjacency()) > 0.0;
    CHECK(matching_exists(g) == perfect);
    CHECK((matched == n) == perfect);
  }
}
