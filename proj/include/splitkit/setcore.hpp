#pragma once

// Ground sets, families and Venn regions.
//
// Elements of the ground set [k] = {1, ..., k} are 1-indexed in every public
// interface; element i is stored in bit i-1 of a 64-bit word, so k <= 64.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace splitkit {

inline constexpr unsigned kMaxGround = 64;

/// Mask with the low k bits set (k <= 64).
constexpr std::uint64_t low_bits(unsigned k) {
  return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
}

/// Inclusive split window for a target of the given size: a splitter meets it
/// in floor(size/2) or ceil(size/2) elements.
struct SplitWindow {
  unsigned lo;
  unsigned hi;
  constexpr bool contains(unsigned c) const { return lo <= c && c <= hi; }
};

constexpr SplitWindow split_window(unsigned size) { return {size / 2, (size + 1) / 2}; }

class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  /// Throws ContractViolation if k > 64 or a bit above position k is set.
  SubsetMask(unsigned k, std::uint64_t bits);

  static SubsetMask of(unsigned k, std::initializer_list<unsigned> elements);
  static SubsetMask of(unsigned k, std::span<const unsigned> elements);
  static SubsetMask full(unsigned k) { return {k, low_bits(k)}; }

  constexpr unsigned k() const { return k_; }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  bool contains(unsigned element) const;

  SubsetMask complement() const { return {k_, low_bits(k_) & ~bits_}; }
  SubsetMask intersect(SubsetMask other) const;

  /// Elements in ascending order, 1-indexed.
  std::vector<unsigned> elements() const;
  std::string to_string() const;

  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;

 private:
  unsigned k_ = 0;
  std::uint64_t bits_ = 0;
};

/// True iff `splitter` meets `target` in half its elements (rounded either way
/// for odd targets). Throws ContractViolation when the ground sets differ.
bool splits(SubsetMask splitter, SubsetMask target);

/// Raw-mask form used by the hot loops; no ground-set check.
constexpr bool splits_bits(std::uint64_t splitter, std::uint64_t target) {
  return split_window(static_cast<unsigned>(std::popcount(target)))
      .contains(static_cast<unsigned>(std::popcount(splitter & target)));
}

/// An ordered list of subsets of a common ground set [k]. Duplicates and the
/// empty set are legal members.
class Family {
 public:
  Family() = default;
  explicit Family(unsigned k, std::vector<std::uint64_t> masks = {});

  static Family from_sets(unsigned k, const std::vector<std::vector<unsigned>>& sets);

  unsigned k() const { return k_; }
  std::size_t size() const { return masks_.size(); }
  bool empty() const { return masks_.empty(); }
  SubsetMask operator[](std::size_t i) const { return SubsetMask(k_, masks_[i]); }
  std::span<const std::uint64_t> masks() const { return masks_; }

  void push_back(SubsetMask set);
  std::vector<std::vector<unsigned>> to_sets() const;
  std::string to_string() const;

  friend bool operator==(const Family&, const Family&) = default;

 private:
  unsigned k_ = 0;
  std::vector<std::uint64_t> masks_;
};

/// Sizes of the 2^n Venn regions of an n-set family. Entry I (a bitmask over
/// set indices, bit i for set i+1) counts the elements lying in exactly the
/// sets of I; entry 0 is the outside region.
class RegionVector {
 public:
  RegionVector() = default;
  /// Throws ContractViolation unless sizes.size() == 2^n.
  RegionVector(unsigned n, std::vector<std::uint64_t> sizes);
  /// All-zero vector for n sets.
  static RegionVector zeros(unsigned n);

  unsigned n() const { return n_; }
  std::size_t region_count() const { return sizes_.size(); }
  std::uint64_t operator[](std::size_t region) const { return sizes_[region]; }
  std::uint64_t& operator[](std::size_t region) { return sizes_[region]; }
  std::span<const std::uint64_t> sizes() const { return sizes_; }

  /// Ground-set size: sum of all region sizes.
  std::uint64_t k() const;
  /// Size of member set i (0-based): sum over regions containing i.
  std::uint64_t member_size(unsigned i) const;
  /// Relabel sets: set i of the result is set perm[i] of this vector.
  RegionVector permute_sets(std::span<const unsigned> perm) const;

  std::string to_string() const;

  friend bool operator==(const RegionVector&, const RegionVector&) = default;
  friend auto operator<=>(const RegionVector&, const RegionVector&) = default;

 private:
  unsigned n_ = 0;
  std::vector<std::uint64_t> sizes_{0};
};

/// Two-set arrangement (a1, b, a2, d): |B1 \ B2|, |B1 n B2|, |B2 \ B1|, outside.
struct Arrangement2 {
  std::uint64_t a1 = 0;
  std::uint64_t b = 0;
  std::uint64_t a2 = 0;
  std::uint64_t d = 0;

  std::uint64_t k() const { return a1 + b + a2 + d; }
  /// Target intersection counts floor(|B_i| / 2).
  std::uint64_t t1() const { return (a1 + b) / 2; }
  std::uint64_t t2() const { return (a2 + b) / 2; }

  RegionVector to_regions() const;
  static Arrangement2 from_regions(const RegionVector& r);
  std::string to_string() const;

  friend auto operator<=>(const Arrangement2&, const Arrangement2&) = default;
};

inline constexpr unsigned kMaxVennSets = 16;

struct VennDecomposition {
  RegionVector regions;
  /// masks[I]: elements lying in exactly the sets indexed by I.
  std::vector<std::uint64_t> masks;
};

/// Partition [k] by membership pattern. Throws CapacityError for n > 16.
VennDecomposition venn_decompose(const Family& family);

/// Canonical family realising a region vector. Nonzero regions are laid out in
/// reflected Gray-code order starting from region {1}, outside region last, so
/// (a1, b, a2, d) = (1, 1, 1, 0) becomes {{1,2},{2,3}}. Throws CapacityError
/// when the sizes sum past 64.
Family family_from_regions(const RegionVector& regions);

}  // namespace splitkit
