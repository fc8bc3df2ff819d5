#pragma once

// Splitting families: construction, verification, equivalence classes, and
// the Hamming-cube structure of their incidence columns.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "splitkit/setcore.hpp"

namespace splitkit {

/// Largest ground set for checks that enumerate all 2^k subsets.
inline constexpr unsigned kMaxExhaustiveGround = 24;

/// The ceil(k/2) intervals {i, ..., i + ceil(k/2) - 1}, i = 1..ceil(k/2).
Family standard_family(unsigned k);

/// Restriction of a family to the first `k` elements.
Family restrict_family(const Family& family, unsigned k);

/// True iff every subset of [k] is split by some member. k <= 24.
bool is_splitting_family(const Family& family);

/// Least subset (as a raw mask) split by no member, if any. k <= 24.
std::optional<SubsetMask> find_unsplit_subset(const Family& family);

enum class SizeMode { Exactly, AtMost };

std::string_view to_string(SizeMode mode);

/// Every subset of size exactly t (or at most t) is split by some member.
/// Requires t <= k, k <= 32, t <= 6.
bool is_t_splitting_family(const Family& family, unsigned t, SizeMode mode);

/// True iff the family is the restriction of a splitting family on k + 1.
/// Requires a splitting family with k + 1 <= 24.
bool is_extendable(const Family& family);

/// Member sizes all in {floor(k/2), ceil(k/2)}.
bool is_uniform(const Family& family);

/// Distinguished representative of the class generated by complementing
/// members, reordering members, and permuting the ground set: the
/// lexicographically least sorted column list, elements relabelled in that
/// order. Requires n <= 8.
Family canonical_form(const Family& family);

bool equivalent(const Family& a, const Family& b);

struct FamilyClass {
  Family canonical;
  unsigned size = 0;
  bool uniform = false;
  bool standard_equivalent = false;
};

struct EnumerationOptions {
  unsigned threads = 0;
  /// Lifts the k <= 10 limit to k <= 16. Runtimes grow steeply.
  bool extended = false;
};

/// All equivalence classes of splitting families on [k] with ceil(k/2)
/// members, sorted by canonical form.
std::vector<FamilyClass> enumerate_minimal_splitting_families(unsigned k, const EnumerationOptions& options = {});

/// Exhaustive search for a splitting family on [k] with exactly `sets`
/// members; returns a witness if one exists. k <= 16.
std::optional<Family> find_splitting_family_of_size(unsigned k, unsigned sets, unsigned threads = 0);

/// Incidence columns of a family, one n-bit vector per ground element.
struct HammingRep {
  unsigned n = 0;
  std::vector<std::uint32_t> columns;

  static bool adjacent(std::uint32_t s, std::uint32_t t);
  static unsigned weight(std::uint32_t s);
  /// Distinct columns in ascending order (the vertex set of the graph).
  std::vector<std::uint32_t> vertices() const;
  /// Number of distinct columns at Hamming distance 1 from s.
  unsigned degree(std::uint32_t s) const;
  /// Number of edges among distinct columns.
  std::size_t edge_count() const;
};

/// Requires n <= 16.
HammingRep hamming_representation(const Family& family);

enum class YKind { A, B, C, D };

char to_char(YKind kind);

struct YWitness {
  YKind kind;
  std::array<std::uint32_t, 4> vertices;
};

/// Matches four distinct columns against the forbidden Y arrangements.
std::optional<YKind> classify_y(const std::array<std::uint32_t, 4>& vertices);

/// A forbidden Y among the distinct columns, if present. A vertex of degree 3
/// or more always yields one. Requires at most 64 columns.
std::optional<YWitness> find_forbidden_y(const HammingRep& rep);

/// Connectivity of the distinct columns under distance-1 adjacency; empty is connected.
bool is_connected(const HammingRep& rep);

enum class ConnectedClass { Standard, RestrictionOfStandard, NotApplicable, Counterexample };

std::string_view to_string(ConnectedClass c);

/// Checks the structure theorem for connected minimum-size <=4-splitting
/// families: a cycle is equivalent to the standard family, a path (odd k) to
/// the restriction of the standard family on k + 1. Returns NotApplicable when
/// the hypotheses fail and Counterexample if the conclusion does not hold.
ConnectedClass classify_connected_le4_minimal(const Family& family);

struct TSplittingResult {
  unsigned size = 0;
  Family witness;
};

/// Least number of sets in a t-splitting (Exactly) or <=t-splitting (AtMost)
/// family on [k], with a witness. Requires 2 <= t <= min(k, 6) and k <= 10.
TSplittingResult min_t_splitting_size(unsigned k, unsigned t, SizeMode mode, unsigned threads = 0);

}  // namespace splitkit
