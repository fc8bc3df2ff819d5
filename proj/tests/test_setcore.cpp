#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "splitkit/error.hpp"
#include "splitkit/setcore.hpp"

using namespace splitkit;

TEST_CASE("splits follows the definition") {
  CHECK(splits(SubsetMask(4, 0), SubsetMask(4, 0)));
  CHECK(splits(SubsetMask::of(4, {1, 2}), SubsetMask::of(4, {1, 2, 3, 4})));
  CHECK_FALSE(splits(SubsetMask::of(4, {1, 2, 3}), SubsetMask::of(4, {1, 2, 3, 4})));
  CHECK(splits(SubsetMask::of(3, {1}), SubsetMask::of(3, {1, 2, 3})));
  CHECK_FALSE(splits(SubsetMask(3, 0), SubsetMask::of(3, {1, 2, 3})));
  CHECK_THROWS_AS(splits(SubsetMask(3, 1), SubsetMask(4, 1)), ContractViolation);
}

TEST_CASE("splits agrees with the element-list oracle for every pair on k = 6") {
  const unsigned k = 6;
  for (std::uint64_t a = 0; a < 64; ++a) {
    for (std::uint64_t b = 0; b < 64; ++b) {
      const bool want = oracle::splits(oracle::members_of(a, k), oracle::members_of(b, k));
      REQUIRE(splits(SubsetMask(k, a), SubsetMask(k, b)) == want);
      REQUIRE(splits_bits(a, b) == want);
    }
  }
}

TEST_CASE("splits is symmetric under complementing the splitter") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5000; ++trial) {
    const unsigned k = 1 + rng() % 64;
    const SubsetMask a(k, rng() & low_bits(k));
    const SubsetMask b(k, rng() & low_bits(k));
    REQUIRE(splits(a, b) == splits(a.complement(), b));
  }
}

TEST_CASE("SubsetMask invariants") {
  CHECK_THROWS_AS(SubsetMask(3, 0b1000), ContractViolation);
  CHECK_THROWS_AS(SubsetMask(65, 0), ContractViolation);
  CHECK_THROWS_AS(SubsetMask::of(3, {4}), ContractViolation);
  CHECK_THROWS_AS(SubsetMask::of(3, {0}), ContractViolation);
  const auto s = SubsetMask::of(64, {1, 64});
  CHECK(s.size() == 2);
  CHECK(s.contains(64));
  CHECK(s.elements() == std::vector<unsigned>{1, 64});
  CHECK(SubsetMask::full(64).size() == 64);
  CHECK(SubsetMask::of(5, {2, 4}).to_string() == "{2,4}");
}

TEST_CASE("Family keeps order and duplicates") {
  const auto f = Family::from_sets(4, {{1, 2}, {1, 2}, {}});
  CHECK(f.size() == 3);
  CHECK(f.to_sets() == std::vector<std::vector<unsigned>>{{1, 2}, {1, 2}, {}});
  CHECK_THROWS_AS(Family::from_sets(2, {{3}}), ContractViolation);
}

TEST_CASE("venn_decompose examples") {
  const auto v = venn_decompose(Family::from_sets(3, {{1, 2}, {2, 3}}));
  CHECK(v.regions.n() == 2);
  CHECK(v.regions[0b01] == 1);
  CHECK(v.regions[0b11] == 1);
  CHECK(v.regions[0b10] == 1);
  CHECK(v.regions[0] == 0);
  CHECK(v.masks[0b11] == 0b010);

  const auto e = venn_decompose(Family(5));
  CHECK(e.regions.n() == 0);
  CHECK(e.regions[0] == 5);

  const auto x = venn_decompose(Family::from_sets(8, {{1, 2, 3, 4}, {1, 2, 5, 6}, {3, 4, 5, 6}, {1, 3, 5, 7}}));
  unsigned occupied = 0;
  for (std::size_t r = 0; r < x.regions.region_count(); ++r) {
    CHECK(x.regions[r] <= 1);
    occupied += static_cast<unsigned>(x.regions[r]);
  }
  CHECK(occupied == 8);
  CHECK(x.masks[0] == 0b10000000);

  CHECK_THROWS_AS(venn_decompose(Family(3, std::vector<std::uint64_t>(17, 0))), CapacityError);
}

TEST_CASE("venn_decompose partitions the ground set") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned k = 1 + rng() % 40;
    const unsigned n = rng() % 6;
    std::vector<std::uint64_t> masks(n);
    for (auto& m : masks) m = rng() & low_bits(k);
    const Family f(k, masks);
    const auto v = venn_decompose(f);
    std::uint64_t seen = 0;
    for (std::size_t r = 0; r < v.masks.size(); ++r) {
      REQUIRE((seen & v.masks[r]) == 0);
      seen |= v.masks[r];
      REQUIRE(v.regions[r] == static_cast<std::uint64_t>(std::popcount(v.masks[r])));
      for (unsigned e = 0; e < k; ++e) {
        if (!((v.masks[r] >> e) & 1U)) continue;
        for (unsigned i = 0; i < n; ++i) REQUIRE((((masks[i] >> e) & 1U) != 0) == (((r >> i) & 1U) != 0));
      }
    }
    REQUIRE(seen == low_bits(k));
    REQUIRE(v.regions.k() == k);
  }
}

TEST_CASE("family_from_regions layout") {
  CHECK(family_from_regions(Arrangement2{1, 1, 1, 0}.to_regions()) == Family::from_sets(3, {{1, 2}, {2, 3}}));
  CHECK(family_from_regions(RegionVector(1, {1, 5})) == Family::from_sets(6, {{1, 2, 3, 4, 5}}));
  CHECK_THROWS_AS(family_from_regions(RegionVector(1, {40, 40})), CapacityError);
}

TEST_CASE("family_from_regions round-trips through venn_decompose for n <= 3, k <= 10") {
  for (unsigned n = 0; n <= 3; ++n) {
    const std::size_t regions = std::size_t{1} << n;
    std::vector<std::uint64_t> sizes(regions, 0);
    std::size_t checked = 0;
    auto fill = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
      if (i == regions) {
        const RegionVector r(n, sizes);
        REQUIRE(venn_decompose(family_from_regions(r)).regions == r);
        ++checked;
        return;
      }
      for (std::uint64_t s = 0; s <= left; ++s) {
        sizes[i] = s;
        self(self, i + 1, left - s);
      }
    };
    fill(fill, 0, 10);
    CHECK(checked == oracle::binom(static_cast<unsigned>(regions) + 10, 10));
  }
}

TEST_CASE("RegionVector and Arrangement2") {
  CHECK_THROWS_AS(RegionVector(2, {1, 2, 3}), ContractViolation);
  const Arrangement2 a{2, 3, 4, 1};
  const RegionVector r = a.to_regions();
  CHECK(r[0] == 1);
  CHECK(r[1] == 2);
  CHECK(r[2] == 4);
  CHECK(r[3] == 3);
  CHECK(r.member_size(0) == 5);
  CHECK(r.member_size(1) == 7);
  CHECK(Arrangement2::from_regions(r) == a);
  CHECK(a.k() == 10);
  CHECK(a.t1() == 2);
  CHECK(a.t2() == 3);
  const unsigned swap[] = {1, 0};
  CHECK(Arrangement2::from_regions(r.permute_sets(swap)) == Arrangement2{4, 3, 2, 1});
}
