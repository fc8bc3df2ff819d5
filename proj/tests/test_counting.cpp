#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "three_set_fixture.hpp"
#include "splitkit/counting.hpp"
#include "splitkit/error.hpp"

using namespace splitkit;

namespace {

std::uint64_t brute(const RegionVector& r) { return oracle::count_splitters(family_from_regions(r)); }

}  // namespace

TEST_CASE("count_splitters examples") {
  CHECK(count_splitters(Family::from_sets(2, {{1, 2}})) == 2);
  CHECK(count_splitters(Family::from_sets(3, {{1, 2, 3}})) == 6);
  CHECK(count_splitters(Family(5)) == 32);
  CHECK_THROWS_AS(count_splitters(Family(25)), CapacityError);
}

TEST_CASE("count_splitters agrees with the oracle") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned k = 1 + rng() % 12;
    std::vector<std::uint64_t> masks(rng() % 5);
    for (auto& m : masks) m = rng() & low_bits(k);
    const Family f(k, masks);
    REQUIRE(count_splitters(f, 1 + trial % 3) == oracle::count_splitters(f));
  }
}

TEST_CASE("count_splitters_regions examples") {
  CHECK(count_splitters_regions(Arrangement2{1, 1, 1, 0}.to_regions()) == 2);
  CHECK(count_splitters_regions(RegionVector(1, {2, 4})) == 24);
  CHECK(count_splitters_regions(drawn_pattern(6)) == 4);
  CHECK(count_splitters_regions(RegionVector::zeros(3)) == 1);
}

TEST_CASE("count_splitters_regions agrees with the oracle for n <= 4") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned n = rng() % 5;
    std::vector<std::uint64_t> sizes(std::size_t{1} << n, 0);
    unsigned k = 0;
    const unsigned target = rng() % 13;
    while (k < target) {
      ++sizes[rng() % sizes.size()];
      ++k;
    }
    const RegionVector r(n, sizes);
    const BigCount dp = count_splitters_regions(r);
    REQUIRE(dp == brute(r));
    REQUIRE(dp == count_splitters_regions_dfs(r));
  }
}

TEST_CASE("count_splitters_regions on large regions matches the dfs") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint64_t> sizes(8);
    for (auto& s : sizes) s = rng() % 30;
    const RegionVector r(3, sizes);
    REQUIRE(count_splitters_regions(r) == count_splitters_regions_dfs(r));
  }
  // Past 64 elements a family no longer exists, but the count is still defined.
  const RegionVector big(1, {100, 200});
  mpz_class expected;
  mpz_bin_uiui(expected.get_mpz_t(), 200, 100);
  expected <<= 100;
  CHECK(count_splitters_regions(big) == expected);
}

TEST_CASE("splitters_one_set") {
  CHECK(splitters_one_set(4, 4) == 6);
  CHECK(splitters_one_set(3, 3) == 6);
  CHECK(splitters_one_set(0, 7) == 128);
  for (unsigned k = 0; k <= 12; ++k) {
    for (unsigned b = 0; b <= k; ++b) {
      REQUIRE(splitters_one_set(b, k) == oracle::count_splitters(Family(k, {low_bits(b)})));
    }
  }
  CHECK_THROWS_AS(splitters_one_set(5, 4), ContractViolation);
}

TEST_CASE("splitters_two_set agrees with the oracle for every arrangement with k <= 12") {
  CHECK(splitters_two_set({2, 2, 2, 0}) == 10);
  CHECK(splitters_two_set({0, 0, 0, 9}) == 512);
  CHECK(splitters_two_set({1, 2, 2, 0}) == splitters_two_set({2, 2, 2, 0}));
  unsigned checked = 0;
  for (unsigned k = 0; k <= 12; ++k) {
    for (std::uint64_t a1 = 0; a1 <= k; ++a1) {
      for (std::uint64_t b = 0; a1 + b <= k; ++b) {
        for (std::uint64_t a2 = 0; a1 + b + a2 <= k; ++a2) {
          const Arrangement2 a{a1, b, a2, k - a1 - b - a2};
          REQUIRE(splitters_two_set(a) == brute(a.to_regions()));
          ++checked;
        }
      }
    }
  }
  CHECK(checked == 1820);
}

TEST_CASE("franel numbers") {
  CHECK(franel(0) == 1);
  CHECK(franel(2) == 10);
  CHECK(franel(3) == 56);
  CHECK(franel(4) == 346);
  for (unsigned m = 0; m <= 12; ++m) {
    std::uint64_t sum = 0;
    for (unsigned j = 0; j <= m; ++j) sum += oracle::binom(m, j) * oracle::binom(m, j) * oracle::binom(m, j);
    REQUIRE(franel(m) == sum);
    REQUIRE(splitters_two_set({m, m, m, 0}) == franel(m));
  }
}

TEST_CASE("approximation") {
  CHECK(approx_splitters_two_set({4, 4, 4, 0}) ==
        doctest::Approx(8192.0 / (std::numbers::pi * std::sqrt(48.0))).epsilon(1e-12));
  CHECK_THROWS_AS(approx_splitters_two_set({0, 0, 0, 5}), DomainError);
  CHECK_THROWS_AS(approx_splitters_two_set({3, 0, 0, 1}), DomainError);
  double previous = 1e300;
  for (unsigned m : {4U, 8U, 12U, 16U, 20U}) {
    const double exact = splitters_two_set({m, m, m, 0}).get_d();
    const double err = std::abs(approx_splitters_two_set({m, m, m, 0}) - exact) / exact;
    CHECK(err <= previous);
    previous = err;
  }
  CHECK(previous < 0.03);
}

TEST_CASE("one-set minimum") {
  const MinResult four = min_one_set(4);
  CHECK(four.count == 6);
  CHECK(four.arrangement == RegionVector(1, {0, 4}));
  const MinResult five = min_one_set(5);
  CHECK(five.count == 12);
  CHECK(five.arrangement == RegionVector(1, {1, 4}));
  const MinResult one = min_one_set(1);
  CHECK(one.count == 2);
  CHECK(one.all_minimizers.size() == 2);
  for (unsigned k = 2; k <= 20; ++k) {
    BigCount best = splitters_one_set(0, k);
    for (unsigned b = 1; b <= k; ++b) best = std::min(best, splitters_one_set(b, k));
    REQUIRE(min_one_set(k).count == best);
    REQUIRE(min_one_set(k).arrangement.member_size(0) == (k % 2 == 0 ? k : k - 1));
  }
}

TEST_CASE("two-set minimum") {
  CHECK(min_two_set(12).count == 346);
  CHECK(Arrangement2::from_regions(min_two_set(12).arrangement).d == 0);
  CHECK(min_two_set(7).count == 18);
  CHECK(matches_two_set_theorem(Arrangement2::from_regions(min_two_set(7).arrangement)));
  CHECK(matches_two_set_theorem({1, 3, 3, 0}));
  CHECK(matches_two_set_theorem({3, 1, 3, 0}));
  CHECK(matches_two_set_theorem({2, 4, 2, 0}));
  CHECK_FALSE(matches_two_set_theorem({1, 3, 3, 1}));
  CHECK(theorem_two_set_arrangement(8) == Arrangement2{2, 2, 4, 0});
  for (unsigned k = 5; k <= 15; ++k) {
    const MinResult r = min_two_set(k);
    CHECK(r.count == splitters_two_set(theorem_two_set_arrangement(k)));
    for (const auto& m : r.all_minimizers) CHECK(matches_two_set_theorem(Arrangement2::from_regions(m)));
  }
}

TEST_CASE("three-set minimum against the table and the drawn pattern") {
  for (unsigned k = 6; k <= 14; ++k) {
    CAPTURE(k);
    const MinResult r = min_three_set(k);
    CHECK(r.count == kThreeSetTable.at(k));
    CHECK(brute(r.arrangement) == kThreeSetTable.at(k));
    const RegionVector drawn = drawn_pattern(k);
    CHECK(drawn.k() == k);
    CHECK(count_splitters_regions(drawn) == kThreeSetTable.at(k));
    CHECK(canonical_regions(drawn) == canonical_regions(figure5_pattern(k)));
    CHECK(matches_figure5(r, k));
  }
  for (unsigned k = 3; k <= 5; ++k) CHECK(min_three_set(k).count == 2);
  for (unsigned k = 15; k <= 20; ++k) CHECK(count_splitters_regions(drawn_pattern(k)) == kThreeSetTable.at(k));
  CHECK_THROWS_AS(min_three_set(17), CapacityError);
}

TEST_CASE("three-set recurrence") {
  std::map<unsigned, BigCount> table;
  for (const auto& [k, v] : kThreeSetTable) table[k] = v;
  CHECK(check_three_set_recurrence(table));
  CHECK(check_three_set_recurrence({{6, 4}, {7, 6}}));
  CHECK_FALSE(check_three_set_recurrence({{6, 4}, {7, 4}, {8, 4}}));
  CHECK_THROWS_AS(check_three_set_recurrence({{6, 4}, {8, 12}}), ContractViolation);
}

TEST_CASE("point-moving inequalities") {
  for (unsigned k = 0; k <= 11; ++k) CHECK(verify_point_moving_lemmas(k).empty());
  CHECK_THROWS_AS(verify_point_moving_lemmas(16), CapacityError);
}
