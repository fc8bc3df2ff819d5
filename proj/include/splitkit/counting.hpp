#pragma once

// Exact and approximate splitter counts, and minimum-splitter arrangements
// for families of one, two and three sets.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splitkit/setcore.hpp"

namespace splitkit {

using BigCount = mpz_class;

/// Brute force over all A in 2^[k]: the number of A splitting every member. k <= 24.
BigCount count_splitters(const Family& family, unsigned threads = 0);

/// Splitter count of any family with the given Venn region sizes, by
/// convolution over per-region intersection counts. n <= 8.
BigCount count_splitters_regions(const RegionVector& regions);

/// Same value by depth-first enumeration of the per-region counts; used to
/// cross-check the dynamic program.
BigCount count_splitters_regions_dfs(const RegionVector& regions);

BigCount splitters_one_set(std::uint64_t b_size, std::uint64_t k);

BigCount splitters_two_set(const Arrangement2& a);

/// 2^(k+1) / (pi * sqrt(a1 a2 + a1 b + a2 b)). Throws DomainError when the
/// radicand is zero.
double approx_splitters_two_set(const Arrangement2& a);

/// sum_i C(m, i)^3.
BigCount franel(unsigned m);

/// Least region vector among the relabellings of its sets.
RegionVector canonical_regions(const RegionVector& regions);

struct MinResult {
  RegionVector arrangement;
  BigCount count;
  /// One representative per class under set relabelling, ascending.
  std::vector<RegionVector> all_minimizers;
};

/// Scans |B| = 0..k. k >= 1.
MinResult min_one_set(unsigned k);

/// Scans every (a1, b, a2, d) with sum k. k >= 3.
MinResult min_two_set(unsigned k);

/// (m, m, m, 0), (m - 2, m, m, 0) or (m, m, m + 2, 0) according to k mod 3.
Arrangement2 theorem_two_set_arrangement(unsigned k);

/// True iff the arrangement has d = 0 and (a1, b, a2) is a permutation of the
/// theorem arrangement for its k.
bool matches_two_set_theorem(const Arrangement2& a);

struct ThreeSetOptions {
  unsigned threads = 0;
  /// Lifts the k <= 16 limit to k <= 24.
  bool extended = false;
};

/// Minimum over splittable three-set families on [k]. 3 <= k <= 16.
MinResult min_three_set(unsigned k, const ThreeSetOptions& options = {});

/// The repeating minimizer shape for k mod 6 (k >= 4), set 1 playing the
/// distinguished role.
RegionVector figure5_pattern(unsigned k);

/// True iff some minimizer equals the pattern up to relabelling the sets.
bool matches_figure5(const MinResult& result, unsigned k);

/// N_6 = 4 and N_{k+1}/N_k = 2 - 1/(floor(k/6) + 1) for even k, 2 for odd k.
/// Keys must be contiguous starting at 6.
bool check_three_set_recurrence(const std::map<unsigned, BigCount>& counts);

struct LemmaViolation {
  std::string lemma;
  Arrangement2 lhs;
  Arrangement2 rhs;
  BigCount lhs_count;
  BigCount rhs_count;
  std::string to_string() const;
};

/// Exhaustive exact check of the swap, no-odd, outside-point and two-point
/// inequalities over every arrangement of total k. k <= 15.
std::vector<LemmaViolation> verify_point_moving_lemmas(unsigned k);

}  // namespace splitkit
