#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "natext/natext.hpp"
#include "oracle.hpp"

using namespace natext;
using Catch::Matchers::WithinAbs;

namespace {

double const kLogPhi = std::log((1 + std::sqrt(5.0)) / 2);

BigInt fib(std::size_t n) {
  BigInt a = 0, b = 1;
  for (std::size_t i = 0; i < n; ++i) {
    BigInt c = a + b;
    a = b;
    b = c;
  }
  return a;
}

SubshiftSpec random_nn(std::mt19937_64& rng, std::size_t k) {
  auto spec = full_shift(SemigroupPresentation::free({"a"}), k);
  std::bernoulli_distribution keep(0.6);
  NearestNeighbor nn;
  Relation r(k);
  for (Symbol p = 0; p < k; ++p)
    for (Symbol q = 0; q < k; ++q)
      if (keep(rng)) r.set(p, q);
  nn.rules.push_back(r);
  spec.rule = nn;
  return spec;
}

}  // namespace

TEST_CASE("Folner defects") {
  for (std::uint32_t d = 1; d <= 3; ++d) {
    FolnerSequence nat{Lattice::Nat, d, false};
    FolnerSequence cen{Lattice::Int, d, true};
    for (std::size_t n = 1; n <= (d == 1 ? 64u : 8u); ++n) {
      CHECK(nat.window(n).size() == nat.window_size(n));
      for (std::uint32_t g = 0; g < d; ++g) {
        CHECK(folner_defect(nat, g, n) == BigRational(2, n));
        CHECK(folner_defect(cen, g, n) == BigRational(2, n));
      }
      if (n > 1) CHECK(folner_defect(nat, 0, n) <= folner_defect(nat, 0, n - 1));
    }
  }
  FolnerSequence c1{Lattice::Int, 1, true};
  auto w = c1.window(5);
  CHECK(w.front() == std::vector<std::int64_t>{-2});
  CHECK(w.back() == std::vector<std::int64_t>{2});
  CHECK_THROWS_AS(c1.window(0), InvalidArgument);
  CHECK_THROWS_AS(folner_for(SemigroupPresentation::free({"a", "b"})), NotAmenableFamily);
  CHECK_THROWS_AS(folner_for(free_monoid_in_free_group({"a", "b"})), NotAmenableFamily);
  CHECK(folner_for(SemigroupPresentation::free_commutative({"x", "y"})).dim == 2);
}

TEST_CASE("entropy of full shifts") {
  auto e2 = entropy_estimate(full_shift(SemigroupPresentation::free({"a"}), 2), 30);
  for (auto const& e : e2) {
    CHECK(e.count == BigInt(1) << e.n);
    CHECK_THAT(e.estimate, WithinAbs(std::log(2.0), 1e-12));
  }
  auto n2 = SemigroupPresentation::free_commutative({"x", "y"});
  auto full3 = full_shift(n2, 3);
  auto z2 = lattice_in_integers({"x", "y"});
  auto rows = entropy_compare(z2, full3, 3);
  for (auto const& r : rows) {
    CHECK(r.count_s == r.count_g);
    CHECK_THAT(r.h_s, WithinAbs(std::log(3.0), 1e-12));
    CHECK_THAT(r.h_g, WithinAbs(std::log(3.0), 1e-12));
  }
  CHECK_THROWS_AS(entropy_estimate(full_shift(SemigroupPresentation::free({"a", "b"}), 2), 3),
                  NotAmenableFamily);
}

TEST_CASE("golden mean entropy") {
  auto rows = entropy_compare(lattice_in_integers({"a"}), golden_mean(), 20);
  REQUIRE(rows.size() == 20);
  for (auto const& r : rows) {
    CHECK(r.count_s == fib(r.n + 2));
    CHECK(r.count_g == r.count_s);
    CHECK(r.difference() == 0.0);
  }
  CHECK(std::fabs(rows.back().h_s - kLogPhi) < 0.02);
  CHECK(std::fabs(rows.back().h_s - kLogPhi) > 1e-3);  // slow convergence, bias about log(phi^2 / sqrt 5) / n
  auto tm = transfer_matrix(golden_mean());
  CHECK_THAT(std::log(oracle::perron_root(tm.matrix)), WithinAbs(kLogPhi, 1e-12));

  // both sides decrease towards log(phi)
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].h_s <= rows[i - 1].h_s);
}

TEST_CASE("random one-step rules on N") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::size_t> alpha(1, 4);
  auto z = lattice_in_integers({"a"});
  for (int i = 0; i < 40; ++i) {
    std::size_t k = alpha(rng);
    auto spec = random_nn(rng, k);
    auto const& rel = spec.as<NearestNeighbor>().rules[0];
    auto est = entropy_estimate(spec, 12);
    auto grp = entropy_estimate(z, spec, 12);
    for (std::size_t n = 1; n <= 12; ++n) {
      auto const& e = est[n - 1];
      CHECK(e.count == oracle::walk_count(rel, n));
      CHECK(grp[n - 1].count == e.count);
      CHECK(e.estimate >= 0.0);
      CHECK(e.estimate <= std::log(static_cast<double>(k)) + 1e-12);
    }
    // sub-additivity of log-counts
    for (std::size_t n = 1; n <= 6; ++n)
      for (std::size_t m = 1; m + n <= 12; ++m)
        CHECK(est[n + m - 1].count <= est[n - 1].count * est[m - 1].count);

    auto tm = transfer_matrix(spec);
    for (std::size_t n = 1; n <= 12; ++n) CHECK(transfer_count(tm, n) == est[n - 1].count);
    auto pm = pushforward_transfer_matrix(z, spec);
    for (std::size_t n = 1; n <= 12; ++n) CHECK(transfer_count(pm, n) == est[n - 1].count);
    CHECK(check_transitive_pushforward(z, spec) == irreducible(tm.matrix));
  }
}

TEST_CASE("pushforward transfer matrix") {
  auto z = lattice_in_integers({"a"});
  auto tm = pushforward_transfer_matrix(z, golden_mean());
  REQUIRE(tm.states.size() == 2);
  CHECK(tm.matrix(0, 0) == 1);
  CHECK(tm.matrix(0, 1) == 1);
  CHECK(tm.matrix(1, 0) == 1);
  CHECK(tm.matrix(1, 1) == 0);
  CHECK(check_transitive_pushforward(z, golden_mean()));

  // 0 -> 0 and 1 -> 1 only: two fixed points, not transitive
  auto spec = full_shift(SemigroupPresentation::free({"a"}), 2);
  spec.rule = NearestNeighbor{{Relation::from_pairs(2, {{0, 0}, {1, 1}})}};
  CHECK_FALSE(check_transitive_pushforward(z, spec));
  CHECK_THROWS_AS(pushforward_transfer_matrix(lattice_in_integers({"x", "y"}), full_shift(SemigroupPresentation::free_commutative({"x", "y"}), 2)),
                  NotSingleGenerator);
}

TEST_CASE("big_log") {
  CHECK_THAT(big_log(BigInt(1)), WithinAbs(0.0, 1e-15));
  BigInt huge = BigInt(1) << 5000;
  CHECK_THAT(big_log(huge), WithinAbs(5000 * std::log(2.0), 1e-9));
  CHECK_THAT(big_log(huge * 3), WithinAbs(5000 * std::log(2.0) + std::log(3.0), 1e-9));
  CHECK_THROWS_AS(big_log(BigInt(0)), InvalidArgument);
}
