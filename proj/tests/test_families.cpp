#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "splitkit/error.hpp"
#include "splitkit/families.hpp"

using namespace splitkit;

namespace {

const Family kExceptional8 = Family::from_sets(8, {{1, 2, 3, 4}, {1, 2, 5, 6}, {3, 4, 5, 6}, {1, 3, 5, 7}});

Family relabel(const Family& f, const std::vector<unsigned>& perm) {
  std::vector<std::uint64_t> out;
  for (auto m : f.masks()) {
    std::uint64_t r = 0;
    for (unsigned e = 0; e < f.k(); ++e) {
      if ((m >> e) & 1U) r |= std::uint64_t{1} << perm[e];
    }
    out.push_back(r);
  }
  return Family(f.k(), out);
}

// Brute-force t-splitting check straight from the definition.
bool oracle_t_splitting(const Family& f, unsigned t, SizeMode mode) {
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << f.k()); ++b) {
    const auto size = static_cast<unsigned>(std::popcount(b));
    if (mode == SizeMode::Exactly ? size != t : size > t) continue;
    if (!oracle::covered(b, f)) return false;
  }
  return true;
}

std::uint32_t column(std::initializer_list<unsigned> sets) {
  std::uint32_t c = 0;
  for (unsigned s : sets) c |= 1U << (s - 1);
  return c;
}

}  // namespace

TEST_CASE("standard_family examples") {
  CHECK(standard_family(8) == Family::from_sets(8, {{1, 2, 3, 4}, {2, 3, 4, 5}, {3, 4, 5, 6}, {4, 5, 6, 7}}));
  CHECK(standard_family(2) == Family::from_sets(2, {{1}}));
  CHECK(standard_family(6) == Family::from_sets(6, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}}));
  CHECK(restrict_family(standard_family(8), 7) == standard_family(7));
}

TEST_CASE("standard families split everything, checked by the oracle") {
  for (unsigned k = 1; k <= 12; ++k) {
    CAPTURE(k);
    CHECK(oracle::is_splitting(standard_family(k)));
    CHECK(is_splitting_family(standard_family(k)));
  }
  for (unsigned k = 13; k <= 24; ++k) CHECK(is_splitting_family(standard_family(k)));
}

TEST_CASE("is_splitting_family agrees with the oracle on random families") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned k = 1 + rng() % 8;
    std::vector<std::uint64_t> masks(rng() % 5);
    for (auto& m : masks) m = rng() & low_bits(k);
    const Family f(k, masks);
    REQUIRE(is_splitting_family(f) == oracle::is_splitting(f));
    const auto w = find_unsplit_subset(f);
    REQUIRE(w.has_value() == !oracle::is_splitting(f));
    if (w) REQUIRE_FALSE(oracle::covered(w->bits(), f));
  }
}

TEST_CASE("is_splitting_family examples and limits") {
  CHECK(is_splitting_family(kExceptional8));
  CHECK_FALSE(is_splitting_family(Family(1)));
  CHECK_THROWS_AS(is_splitting_family(standard_family(25)), CapacityError);
}

TEST_CASE("is_t_splitting_family agrees with the oracle") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned k = 2 + rng() % 8;
    std::vector<std::uint64_t> masks(1 + rng() % 4);
    for (auto& m : masks) m = rng() & low_bits(k);
    const Family f(k, masks);
    const unsigned t = 1 + rng() % std::min(k, 6U);
    for (SizeMode mode : {SizeMode::Exactly, SizeMode::AtMost}) {
      REQUIRE(is_t_splitting_family(f, t, mode) == oracle_t_splitting(f, t, mode));
    }
  }
}

TEST_CASE("is_t_splitting_family examples") {
  // Columns delta_1 .. delta_4: set i is {i}.
  const Family singletons = Family::from_sets(4, {{1}, {2}, {3}, {4}});
  CHECK_FALSE(is_t_splitting_family(singletons, 4, SizeMode::Exactly));
  // Any single member splits every set of size at most one; with no members nothing is split.
  CHECK(is_t_splitting_family(Family::from_sets(5, {{}}), 1, SizeMode::AtMost));
  CHECK_FALSE(is_t_splitting_family(Family(5), 1, SizeMode::AtMost));
  CHECK(is_t_splitting_family(standard_family(10), 4, SizeMode::AtMost));
  CHECK_THROWS_AS(is_t_splitting_family(standard_family(5), 6, SizeMode::Exactly), ContractViolation);
}

TEST_CASE("is_extendable") {
  CHECK(is_extendable(standard_family(7)));
  CHECK_FALSE(is_extendable(standard_family(8)));
  CHECK_FALSE(is_extendable(Family::from_sets(2, {{1}})));
}

TEST_CASE("canonical_form invariance") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned k = 1 + rng() % 12;
    std::vector<std::uint64_t> masks(1 + rng() % 5);
    for (auto& m : masks) m = rng() & low_bits(k);
    const Family f(k, masks);
    std::vector<unsigned> perm(k);
    std::iota(perm.begin(), perm.end(), 0U);
    std::shuffle(perm.begin(), perm.end(), rng);
    Family g = relabel(f, perm);
    // Complement one member and reverse the member order.
    std::vector<std::uint64_t> gm(g.masks().begin(), g.masks().end());
    gm[rng() % gm.size()] ^= low_bits(k);
    std::reverse(gm.begin(), gm.end());
    g = Family(k, gm);
    REQUIRE(canonical_form(f) == canonical_form(g));
    REQUIRE(equivalent(f, g));
  }
  const Family reversed = Family::from_sets(8, {{5, 6, 7, 8}, {4, 5, 6, 7}, {3, 4, 5, 6}, {2, 3, 4, 5}});
  CHECK(canonical_form(reversed) == canonical_form(standard_family(8)));
  CHECK_FALSE(equivalent(kExceptional8, standard_family(8)));
  CHECK_THROWS_AS(canonical_form(Family(3, std::vector<std::uint64_t>(9, 0))), CapacityError);
}

TEST_CASE("minimal splitting families") {
  for (unsigned k : {2U, 4U, 6U, 10U}) {
    const auto classes = enumerate_minimal_splitting_families(k);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].standard_equivalent);
    CHECK(equivalent(classes[0].canonical, standard_family(k)));
  }
  const auto eight = enumerate_minimal_splitting_families(8);
  REQUIRE(eight.size() == 2);
  CHECK(std::count_if(eight.begin(), eight.end(), [](const FamilyClass& c) { return c.standard_equivalent; }) == 1);
  const auto& odd = eight[0].standard_equivalent ? eight[1] : eight[0];
  CHECK(equivalent(odd.canonical, kExceptional8));
  for (unsigned k = 1; k <= 10; ++k) {
    for (const auto& c : enumerate_minimal_splitting_families(k)) {
      CHECK(c.uniform);
      CHECK(c.size == (k + 1) / 2);
      CHECK(oracle::is_splitting(c.canonical));
    }
  }
  CHECK_THROWS_AS(enumerate_minimal_splitting_families(0), ContractViolation);
  CHECK_THROWS_AS(enumerate_minimal_splitting_families(11), CapacityError);
}

TEST_CASE("no splitting family below ceil(k/2) sets, small k") {
  for (unsigned k = 2; k <= 9; ++k) {
    CHECK_FALSE(find_splitting_family_of_size(k, (k + 1) / 2 - 1).has_value());
    const auto w = find_splitting_family_of_size(k, (k + 1) / 2);
    REQUIRE(w.has_value());
    CHECK(oracle::is_splitting(*w));
  }
}

TEST_CASE("hamming representation of the standard family on 8 is an 8-cycle") {
  const HammingRep rep = hamming_representation(standard_family(8));
  const std::vector<std::uint32_t> expected = {column({}),        column({1}),       column({1, 2}),
                                               column({1, 2, 3}), column({1, 2, 3, 4}), column({2, 3, 4}),
                                               column({3, 4}),    column({4})};
  // Elements 1..8 walk around the cycle in order.
  CHECK(rep.columns == std::vector<std::uint32_t>{column({1}), column({1, 2}), column({1, 2, 3}),
                                                  column({1, 2, 3, 4}), column({2, 3, 4}), column({3, 4}),
                                                  column({4}), column({})});
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(HammingRep::adjacent(expected[i], expected[(i + 1) % expected.size()]));
    CHECK(rep.degree(expected[i]) == 2);
  }
  CHECK(rep.edge_count() == 8);
  CHECK(is_connected(rep));
  CHECK_FALSE(find_forbidden_y(rep).has_value());
}

TEST_CASE("hamming representation of the exceptional family") {
  const HammingRep rep = hamming_representation(kExceptional8);
  CHECK(rep.vertices().size() == 8);
  CHECK(rep.edge_count() == 4);
  CHECK_FALSE(is_connected(rep));
  CHECK_FALSE(find_forbidden_y(rep).has_value());
  const HammingRep empty = hamming_representation(Family(3));
  CHECK(empty.n == 0);
  CHECK(empty.columns == std::vector<std::uint32_t>{0, 0, 0});
  CHECK(is_connected(HammingRep{3, {5}}));
}

TEST_CASE("forbidden Y") {
  const HammingRep star{3, {0, column({1}), column({2}), column({3})}};
  const auto y = find_forbidden_y(star);
  REQUIRE(y.has_value());
  CHECK(y->kind == YKind::A);
  CHECK_FALSE(find_forbidden_y(HammingRep{4, {column({1}), column({2}), column({3}), column({4})}}).has_value());
}

TEST_CASE("a vertex of degree three always yields a Y") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const unsigned n = 3 + rng() % 5;
    const std::uint32_t centre = rng() & ((1U << n) - 1);
    std::vector<unsigned> bits(n);
    std::iota(bits.begin(), bits.end(), 0U);
    std::shuffle(bits.begin(), bits.end(), rng);
    HammingRep rep{n, {centre}};
    for (int i = 0; i < 3; ++i) rep.columns.push_back(centre ^ (1U << bits[i]));
    for (unsigned extra = rng() % 4; extra > 0; --extra) rep.columns.push_back(rng() & ((1U << n) - 1));
    REQUIRE(rep.degree(centre) >= 3);
    REQUIRE(find_forbidden_y(rep).has_value());
  }
}

TEST_CASE("connected <=4-splitting classification") {
  CHECK(classify_connected_le4_minimal(standard_family(8)) == ConnectedClass::Standard);
  CHECK(classify_connected_le4_minimal(standard_family(7)) == ConnectedClass::RestrictionOfStandard);
  CHECK(classify_connected_le4_minimal(kExceptional8) == ConnectedClass::NotApplicable);
  for (unsigned k = 5; k <= 12; ++k) {
    const auto c = classify_connected_le4_minimal(standard_family(k));
    CHECK(c == (k % 2 == 0 ? ConnectedClass::Standard : ConnectedClass::RestrictionOfStandard));
  }
}

TEST_CASE("least t-splitting sizes respect the logarithmic bounds") {
  for (unsigned k = 4; k <= 10; ++k) {
    const auto exact = min_t_splitting_size(k, 4, SizeMode::Exactly);
    CHECK(oracle_t_splitting(exact.witness, 4, SizeMode::Exactly));
    CHECK(exact.witness.size() == exact.size);
    if (k >= 6) CHECK(exact.size >= std::log2(k) - 1e-12);

    const auto most = min_t_splitting_size(k, 4, SizeMode::AtMost);
    CHECK(oracle_t_splitting(most.witness, 4, SizeMode::AtMost));
    if (k >= 5 && k != 6) CHECK(most.size >= std::log2(k) + 3 - std::log2(5.0) - 1e-12);
  }
  // On k = 6 three sets suffice, below log2(6) + 3 - log2(5); the standard family is a witness.
  CHECK(min_t_splitting_size(6, 4, SizeMode::AtMost).size == 3);
  CHECK(oracle_t_splitting(standard_family(6), 4, SizeMode::AtMost));
  CHECK(3 < std::log2(6.0) + 3 - std::log2(5.0));
  CHECK(min_t_splitting_size(6, 4, SizeMode::Exactly).size >= 3);
  CHECK(min_t_splitting_size(5, 4, SizeMode::AtMost).size >= 3);
}

TEST_CASE("least t-splitting size is tight against brute force on tiny k") {
  // Every family with size - 1 members over k <= 5 fails, checked directly.
  for (unsigned k = 4; k <= 5; ++k) {
    for (SizeMode mode : {SizeMode::Exactly, SizeMode::AtMost}) {
      const unsigned size = min_t_splitting_size(k, 4, mode).size;
      if (size < 2) continue;
      const unsigned n = size - 1;
      const std::uint64_t subsets = std::uint64_t{1} << k;
      std::vector<std::uint64_t> idx(n, 0);
      bool found = false;
      while (!found) {
        if (oracle_t_splitting(Family(k, idx), 4, mode)) found = true;
        std::size_t i = 0;
        while (i < n && ++idx[i] == subsets) idx[i++] = 0;
        if (i == n) break;
      }
      CHECK_FALSE(found);
    }
  }
}
