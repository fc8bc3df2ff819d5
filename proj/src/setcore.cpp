#include "splitkit/setcore.hpp"

#include <numeric>
#include <sstream>

#include "splitkit/error.hpp"

namespace splitkit {

SubsetMask::SubsetMask(unsigned k, std::uint64_t bits) : k_(k), bits_(bits) {
  if (k > kMaxGround) {
    throw ContractViolation("ground set size " + std::to_string(k) + " exceeds 64");
  }
  if ((bits & ~low_bits(k)) != 0) {
    throw ContractViolation("mask has elements outside [" + std::to_string(k) + "]");
  }
}

SubsetMask SubsetMask::of(unsigned k, std::initializer_list<unsigned> elements) {
  return of(k, std::span<const unsigned>(elements.begin(), elements.size()));
}

SubsetMask SubsetMask::of(unsigned k, std::span<const unsigned> elements) {
  std::uint64_t bits = 0;
  for (unsigned e : elements) {
    if (e == 0 || e > k) {
      throw ContractViolation("element " + std::to_string(e) + " not in [" + std::to_string(k) + "]");
    }
    bits |= std::uint64_t{1} << (e - 1);
  }
  return {k, bits};
}

bool SubsetMask::contains(unsigned element) const {
  return element >= 1 && element <= k_ && ((bits_ >> (element - 1)) & 1U) != 0;
}

SubsetMask SubsetMask::intersect(SubsetMask other) const {
  if (other.k_ != k_) throw ContractViolation("ground sets differ");
  return {k_, bits_ & other.bits_};
}

std::vector<unsigned> SubsetMask::elements() const {
  std::vector<unsigned> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(static_cast<unsigned>(std::countr_zero(b)) + 1);
  }
  return out;
}

std::string SubsetMask::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (unsigned e : elements()) {
    os << (first ? "" : ",") << e;
    first = false;
  }
  os << '}';
  return os.str();
}

bool splits(SubsetMask splitter, SubsetMask target) {
  if (splitter.k() != target.k()) {
    throw ContractViolation("splits: ground sets differ (" + std::to_string(splitter.k()) + " vs " +
                            std::to_string(target.k()) + ")");
  }
  return splits_bits(splitter.bits(), target.bits());
}

Family::Family(unsigned k, std::vector<std::uint64_t> masks) : k_(k), masks_(std::move(masks)) {
  if (k > kMaxGround) throw ContractViolation("ground set size exceeds 64");
  for (std::uint64_t m : masks_) {
    if ((m & ~low_bits(k)) != 0) throw ContractViolation("family member outside ground set");
  }
}

Family Family::from_sets(unsigned k, const std::vector<std::vector<unsigned>>& sets) {
  Family f(k);
  for (const auto& s : sets) f.push_back(SubsetMask::of(k, s));
  return f;
}

void Family::push_back(SubsetMask set) {
  if (set.k() != k_) throw ContractViolation("family member has a different ground set");
  masks_.push_back(set.bits());
}

std::vector<std::vector<unsigned>> Family::to_sets() const {
  std::vector<std::vector<unsigned>> out;
  out.reserve(masks_.size());
  for (std::uint64_t m : masks_) out.push_back(SubsetMask(k_, m).elements());
  return out;
}

std::string Family::to_string() const {
  std::ostringstream os;
  os << "k=" << k_ << " {";
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    os << (i ? "," : "") << SubsetMask(k_, masks_[i]).to_string();
  }
  os << '}';
  return os.str();
}

RegionVector::RegionVector(unsigned n, std::vector<std::uint64_t> sizes) : n_(n), sizes_(std::move(sizes)) {
  if (n >= 63 || sizes_.size() != (std::size_t{1} << n)) {
    throw ContractViolation("region vector for " + std::to_string(n) + " sets needs 2^n entries");
  }
}

RegionVector RegionVector::zeros(unsigned n) {
  if (n > kMaxVennSets) throw CapacityError("too many sets for a region vector");
  return {n, std::vector<std::uint64_t>(std::size_t{1} << n, 0)};
}

std::uint64_t RegionVector::k() const { return std::accumulate(sizes_.begin(), sizes_.end(), std::uint64_t{0}); }

std::uint64_t RegionVector::member_size(unsigned i) const {
  std::uint64_t total = 0;
  for (std::size_t region = 0; region < sizes_.size(); ++region) {
    if ((region >> i) & 1U) total += sizes_[region];
  }
  return total;
}

RegionVector RegionVector::permute_sets(std::span<const unsigned> perm) const {
  if (perm.size() != n_) throw ContractViolation("permutation length differs from set count");
  RegionVector out = zeros(n_);
  for (std::size_t region = 0; region < sizes_.size(); ++region) {
    std::size_t image = 0;
    for (unsigned i = 0; i < n_; ++i) {
      if ((region >> perm[i]) & 1U) image |= std::size_t{1} << i;
    }
    out.sizes_[image] = sizes_[region];
  }
  return out;
}

std::string RegionVector::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < sizes_.size(); ++i) os << (i ? "," : "") << sizes_[i];
  os << ']';
  return os.str();
}

RegionVector Arrangement2::to_regions() const { return {2, {d, a1, a2, b}}; }

Arrangement2 Arrangement2::from_regions(const RegionVector& r) {
  if (r.n() != 2) throw ContractViolation("two-set arrangement needs a 2-set region vector");
  return {r[1], r[3], r[2], r[0]};
}

std::string Arrangement2::to_string() const {
  std::ostringstream os;
  os << '(' << a1 << ',' << b << ',' << a2 << ',' << d << ')';
  return os.str();
}

VennDecomposition venn_decompose(const Family& family) {
  const auto n = static_cast<unsigned>(family.size());
  if (n > kMaxVennSets) {
    throw CapacityError("venn_decompose: " + std::to_string(n) + " sets exceed the limit of 16");
  }
  VennDecomposition out{RegionVector::zeros(n), std::vector<std::uint64_t>(std::size_t{1} << n, 0)};
  const auto masks = family.masks();
  for (unsigned e = 0; e < family.k(); ++e) {
    std::size_t region = 0;
    for (unsigned i = 0; i < n; ++i) {
      if ((masks[i] >> e) & 1U) region |= std::size_t{1} << i;
    }
    out.masks[region] |= std::uint64_t{1} << e;
    ++out.regions[region];
  }
  return out;
}

Family family_from_regions(const RegionVector& regions) {
  const std::uint64_t k = regions.k();
  if (k > kMaxGround) {
    throw CapacityError("family_from_regions: " + std::to_string(k) + " elements exceed 64");
  }
  const unsigned n = regions.n();
  std::vector<std::uint64_t> masks(n, 0);
  unsigned next = 0;
  const std::size_t count = regions.region_count();
  // Gray order over the nonzero regions, then the outside region.
  for (std::size_t j = 1; j <= count; ++j) {
    const std::size_t region = j == count ? 0 : (j ^ (j >> 1));
    for (std::uint64_t c = 0; c < regions[region]; ++c, ++next) {
      for (unsigned i = 0; i < n; ++i) {
        if ((region >> i) & 1U) masks[i] |= std::uint64_t{1} << next;
      }
    }
  }
  return Family(static_cast<unsigned>(k), std::move(masks));
}

}  // namespace splitkit
