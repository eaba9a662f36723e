#include "doctest.h"

#include <cmath>
#include <random>

#include "hafnian/counterexample.hpp"
#include "hafnian/experiments.hpp"
#include "hafnian/hafnian_exact.hpp"
#include "hafnian/linalg.hpp"
#include "hafnian/scaling.hpp"
#include "oracles.hpp"

using namespace hafnian;

namespace {

void check_fixed_point(const SymMatrix& a, const ScalingResult& r) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(r.b(i, j) == r.b(j, i));
      CHECK(r.b(i, j) == doctest::Approx(r.d[i] * a(i, j) * r.d[j]).epsilon(1e-12));
      row += r.b(i, j);
    }
    CHECK(std::fabs(row - 1.0) <= r.residual + 1e-15);
  }
}

}  // namespace

TEST_CASE("2x2 scaling") {
  const SymMatrix a = SymMatrix::from_rows({{0, 2}, {2, 0}});
  const auto r = scale_symmetric(a, 1e-14);
  CHECK(r.converged);
  CHECK(r.b(0, 1) == doctest::Approx(1.0));
  CHECK(r.d[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(r.d[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("regular graphs scale to A / d immediately") {
  for (auto [n, d] : {std::pair<std::size_t, std::size_t>{10, 3}, {16, 8}, {20, 5}}) {
    const SymMatrix a = random_regular_graph(n, d, n).adjacency();
    const auto r = scale_symmetric(a, 1e-12);
    CHECK(r.converged);
    CHECK(r.iterations <= 2);
    CHECK(r.max_entry == doctest::Approx(1.0 / double(d)).epsilon(1e-12));
    for (double x : r.d) CHECK(x == doctest::Approx(1.0 / std::sqrt(double(d))));
    check_fixed_point(a, r);
  }
}

TEST_CASE("default residual target is 1/n") {
  const auto g = build_counterexample(CounterexampleSpec::with_pairs(0.12, 5, 1));
  const SymMatrix a = g.adjacency();
  const auto r = scale_symmetric(a);
  CHECK(r.converged);
  CHECK(r.residual <= 1.0 / double(a.size()));
}

TEST_CASE("star graph does not converge and is reported, not thrown") {
  const SymMatrix star = SymMatrix::from_rows({{0, 1, 1, 1}, {1, 0, 0, 0}, {1, 0, 0, 0}, {1, 0, 0, 0}});
  const auto r = scale_symmetric(star, 1e-10, 5000);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 5000);
  CHECK(r.residual > 1e-10);
}

TEST_CASE("zero row is an input error") {
  SymMatrix a(4);
  a.set(0, 1, 1.0);
  a.set(1, 2, 1.0);
  CHECK_THROWS_AS(scale_symmetric(a), InputError);
}

TEST_CASE("irregular graphs converge to a unique stochastic matrix from any start") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.2, 3.0);
  int done = 0;
  for (int rep = 0; done < 10 && rep < 1000; ++rep) {
    const auto g = oracle::random_graph(12, 0.5, rng);
    if (min_degree(g) < 2) continue;
    const SymMatrix a = g.adjacency();
    const auto r1 = scale_symmetric(a, 1e-12);
    if (!r1.converged) continue;
    std::vector<double> init(12);
    for (auto& x : init) x = u(rng);
    const auto r2 = scale_symmetric(a, 1e-12, 100000, init);
    REQUIRE(r2.converged);
    check_fixed_point(a, r1);
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = 0; j < 12; ++j) CHECK(r1.b(i, j) == doctest::Approx(r2.b(i, j)).epsilon(1e-6).scale(1.0));
    }
    for (double x : eig_symmetric(r1.b)) {
      CHECK(x <= 1.0 + 1e-8);
      CHECK(x >= -1.0 - 1e-8);
    }
    ++done;
  }
  CHECK(done == 10);
}

TEST_CASE("scaling equivariance of the hafnian") {
  std::mt19937_64 rng(62);
  int done = 0;
  for (int rep = 0; done < 10 && rep < 1000; ++rep) {
    const std::size_t n = 6 + 2 * static_cast<std::size_t>(rep % 3);
    const auto g = oracle::random_graph(n, 0.6, rng);
    if (min_degree(g) == 0 || !matching_exists(g)) continue;
    const SymMatrix a = g.adjacency();
    const auto r = scale_symmetric(a, 1e-13, 200000);
    if (!r.converged) continue;
    double log_prod = 0.0;
    for (double x : r.d) log_prod += std::log(x);
    CHECK(hafnian_exact(a).log_value == doctest::Approx(hafnian_exact(r.b).log_value - log_prod).epsilon(1e-9));
    ++done;
  }
  CHECK(done == 10);
}

TEST_CASE("entry audit") {
  // K_n: max entry 1/(n-1)
  const std::size_t n = 16;
  const auto r = scale_symmetric(complete_graph(n).adjacency(), 1e-12);
  const auto audit = audit_entry_bounds(r, 0.9, 0.5);
  CHECK(audit.max_exponent == doctest::Approx(std::log(15.0) / std::log(16.0)));
  CHECK(audit.max_exponent >= 1.0 - std::log(2.0) / std::log(16.0));
  CHECK(audit.max_ok);
  CHECK(audit.min_ok);
  CHECK_FALSE(audit_entry_bounds(r, 1.0, 0.5).max_ok);

  const auto r2 = scale_symmetric(SymMatrix::from_rows({{0, 1}, {1, 0}}), 1e-12);
  CHECK_FALSE(audit_entry_bounds(r2, 0.01, 1.0).max_ok);

  // d = n/2 regular: max_entry = 2/n, max_ok for theta <= 1 - log 2 / log n
  const auto r3 = scale_symmetric(random_regular_graph(16, 8, 3).adjacency(), 1e-12);
  const double t = 1.0 - std::log(2.0) / std::log(16.0);
  CHECK(audit_entry_bounds(r3, t - 1e-12, 1.0).max_ok);
  CHECK_FALSE(audit_entry_bounds(r3, t + 1e-9, 1.0).max_ok);
}

TEST_CASE("counterexample audit exponents at M = 40 are frozen") {
  // Pair-center and center-center edges lie in no perfect matching, so only
  // the default 1/n stopping rule is reachable.
  const auto spec = CounterexampleSpec::from_delta(0.12, 19);
  REQUIRE(spec.total_vertices() == 40);
  const SymMatrix a = build_counterexample(spec).adjacency();
  const auto r = scale_symmetric(a);
  REQUIRE(r.converged);
  CHECK(r.iterations == 64);
  const auto audit = audit_entry_bounds(r, 0.5, 1.0);
  CHECK(audit.max_exponent == doctest::Approx(0.12779712578604535).epsilon(1e-9));
  CHECK(audit.min_exponent == doctest::Approx(1.0037246950792991).epsilon(1e-9));
  CHECK_FALSE(audit.max_ok);
  CHECK_FALSE(scale_symmetric(a, 1e-12, 20000).converged);
}

TEST_CASE("spectral gap") {
  const auto k6 = scale_symmetric(complete_graph(6).adjacency(), 1e-14);
  const auto gap = spectral_gap(k6.b, 0.8);
  CHECK(gap.has_gap);
  CHECK(gap.gap_witness == doctest::Approx(0.2));
  CHECK(gap.unit_eigenvalues == 1);
  CHECK_FALSE(gap.reducible);
  CHECK_FALSE(spectral_gap(k6.b, 0.81).has_gap);

  const auto match = scale_symmetric(matching_graph(6).adjacency(), 1e-14);
  const auto mg = spectral_gap(match.b, 0.5);
  CHECK(mg.has_gap);
  CHECK(mg.unit_eigenvalues == 3);
  CHECK(mg.neg_unit_eigenvalues == 3);
  CHECK(mg.reducible);

  // random 3-regular graphs on 50 vertices: a gap of 0.05 is typical, not certain
  int with_gap = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rr = scale_symmetric(random_regular_graph(50, 3, seed).adjacency(), 1e-14);
    const auto rg = spectral_gap(rr.b, 0.05);
    with_gap += rg.has_gap && rg.gap_witness < 0.95;
  }
  CHECK(with_gap >= 18);

  CHECK_THROWS_AS(spectral_gap(complete_graph(6).adjacency(), 0.1), InputError);
}
