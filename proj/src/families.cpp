#include "splitkit/families.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "splitkit/error.hpp"
#include "splitkit/kernels.hpp"
#include "splitkit/parallel.hpp"

namespace splitkit {

namespace {

constexpr unsigned kMaxCanonicalSets = 8;
constexpr unsigned kMaxEnumerationGround = 10;
constexpr unsigned kMaxExtendedGround = 16;

void require_exhaustive(unsigned k) {
  if (k > kMaxExhaustiveGround) {
    throw CapacityError("exhaustive subset checks support k <= " + std::to_string(kMaxExhaustiveGround) + ", got " +
                        std::to_string(k));
  }
}

std::vector<std::uint32_t> columns_of(const Family& family) {
  std::vector<std::uint32_t> cols(family.k(), 0);
  const auto masks = family.masks();
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (unsigned e = 0; e < family.k(); ++e) {
      if ((masks[i] >> e) & 1U) cols[e] |= 1U << i;
    }
  }
  return cols;
}

Family family_from_columns(unsigned k, unsigned n, std::span<const std::uint32_t> cols) {
  std::vector<std::uint64_t> masks(n, 0);
  for (unsigned e = 0; e < cols.size(); ++e) {
    for (unsigned i = 0; i < n; ++i) {
      if ((cols[e] >> i) & 1U) masks[i] |= std::uint64_t{1} << e;
    }
  }
  return Family(k, std::move(masks));
}

// Calls visit(mask) for every subset of [k] with exactly `size` elements, in
// increasing order, until visit returns false.
template <class Visit>
bool for_each_subset_of_size(unsigned k, unsigned size, Visit&& visit) {
  if (size > k) return true;
  if (size == 0) return visit(std::uint64_t{0});
  std::uint64_t s = low_bits(size);
  const std::uint64_t limit = std::uint64_t{1} << k;
  while (s < limit) {
    if (!visit(s)) return false;
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return true;
}

// Depth-first search over incidence-column lists c_0 <= c_1 <= ... of length
// k with values below 2^n and c_0 = 0, at most max_mult copies of any value.
// extend_ok(masks, m) vets the partial family after element m is placed.
// leaf(cols) receives complete lists and returns false to stop the search.
struct ColumnSearch {
  unsigned k;
  unsigned n;
  unsigned max_mult;
  std::function<bool(std::span<const std::uint64_t>, unsigned)> extend_ok;
  std::function<bool(std::span<const std::uint32_t>)> leaf;

  void run(unsigned threads) const {
    if (k == 0) {
      leaf({});
      return;
    }
    const unsigned prefix_depth = std::min(k, 3U);
    std::vector<std::vector<std::uint32_t>> prefixes;
    {
      std::vector<std::uint32_t> cols;
      std::vector<std::uint64_t> masks(n, 0);
      std::atomic<bool> stop{false};
      collect(cols, masks, prefix_depth, prefixes, stop);
    }
    std::atomic<bool> stop{false};
    parallel_for(prefixes.size(), threads, [&](std::size_t t) {
      if (stop.load(std::memory_order_relaxed)) return;
      std::vector<std::uint32_t> cols;
      std::vector<std::uint64_t> masks(n, 0);
      for (std::uint32_t c : prefixes[t]) place(cols, masks, c);
      dfs(cols, masks, stop);
    });
  }

 private:
  void place(std::vector<std::uint32_t>& cols, std::vector<std::uint64_t>& masks, std::uint32_t c) const {
    const unsigned m = static_cast<unsigned>(cols.size());
    for (unsigned i = 0; i < n; ++i) {
      if ((c >> i) & 1U) masks[i] |= std::uint64_t{1} << m;
    }
    cols.push_back(c);
  }

  void unplace(std::vector<std::uint32_t>& cols, std::vector<std::uint64_t>& masks) const {
    cols.pop_back();
    const std::uint64_t clear = ~(std::uint64_t{1} << cols.size());
    for (auto& mask : masks) mask &= clear;
  }

  // Candidate values for the next column given the columns so far.
  template <class Fn>
  bool for_each_candidate(const std::vector<std::uint32_t>& cols, Fn&& fn) const {
    const std::uint32_t limit = std::uint32_t{1} << n;
    if (cols.empty()) return fn(0U);
    const std::uint32_t last = cols.back();
    unsigned run = 0;
    for (auto it = cols.rbegin(); it != cols.rend() && *it == last; ++it) ++run;
    const std::uint32_t start = run < max_mult ? last : last + 1;
    const unsigned remaining = k - static_cast<unsigned>(cols.size());
    for (std::uint32_t c = start; c < limit; ++c) {
      // Enough room left for the remaining columns?
      if (static_cast<std::uint64_t>(limit - c) * max_mult < remaining) break;
      if (!fn(c)) return false;
    }
    return true;
  }

  void collect(std::vector<std::uint32_t>& cols, std::vector<std::uint64_t>& masks, unsigned depth,
               std::vector<std::vector<std::uint32_t>>& out, std::atomic<bool>& stop) const {
    if (cols.size() == depth) {
      out.push_back(cols);
      return;
    }
    for_each_candidate(cols, [&](std::uint32_t c) {
      place(cols, masks, c);
      if (extend_ok(masks, static_cast<unsigned>(cols.size() - 1))) collect(cols, masks, depth, out, stop);
      unplace(cols, masks);
      return true;
    });
  }

  void dfs(std::vector<std::uint32_t>& cols, std::vector<std::uint64_t>& masks, std::atomic<bool>& stop) const {
    if (cols.size() == k) {
      if (!leaf(cols)) stop.store(true, std::memory_order_relaxed);
      return;
    }
    for_each_candidate(cols, [&](std::uint32_t c) {
      if (stop.load(std::memory_order_relaxed)) return false;
      place(cols, masks, c);
      if (extend_ok(masks, static_cast<unsigned>(cols.size() - 1))) dfs(cols, masks, stop);
      unplace(cols, masks);
      return true;
    });
  }
};

// Partial check for full splitting: subsets whose largest element is m.
bool new_subsets_split(std::span<const std::uint64_t> masks, unsigned m) {
  return !kernels::first_unsplit_range(masks, std::uint64_t{1} << m, std::uint64_t{1} << (m + 1)).has_value();
}

}  // namespace

Family standard_family(unsigned k) {
  if (k > kMaxGround) throw CapacityError("standard_family supports k <= 64");
  const unsigned h = (k + 1) / 2;
  std::vector<std::uint64_t> masks;
  masks.reserve(h);
  for (unsigned i = 0; i < h; ++i) masks.push_back(low_bits(h) << i);
  return Family(k, std::move(masks));
}

Family restrict_family(const Family& family, unsigned k) {
  if (k > family.k()) throw ContractViolation("restriction target exceeds the ground set");
  std::vector<std::uint64_t> masks(family.masks().begin(), family.masks().end());
  for (auto& m : masks) m &= low_bits(k);
  return Family(k, std::move(masks));
}

bool is_splitting_family(const Family& family) { return !find_unsplit_subset(family).has_value(); }

std::optional<SubsetMask> find_unsplit_subset(const Family& family) {
  require_exhaustive(family.k());
  const auto hit = kernels::first_unsplit_range(family.masks(), 0, std::uint64_t{1} << family.k());
  if (!hit) return std::nullopt;
  return SubsetMask(family.k(), *hit);
}

std::string_view to_string(SizeMode mode) { return mode == SizeMode::Exactly ? "exactly" : "at-most"; }

bool is_t_splitting_family(const Family& family, unsigned t, SizeMode mode) {
  const unsigned k = family.k();
  if (t > k) throw ContractViolation("t = " + std::to_string(t) + " exceeds k = " + std::to_string(k));
  if (k > 32 || t > 6) throw CapacityError("t-splitting checks support k <= 32 and t <= 6");
  std::vector<std::uint64_t> batch;
  batch.reserve(4096);
  bool ok = true;
  auto flush = [&] {
    if (kernels::first_unsplit_list(family.masks(), batch)) ok = false;
    batch.clear();
    return ok;
  };
  const unsigned smallest = mode == SizeMode::Exactly ? t : 0;
  for (unsigned size = smallest; size <= t && ok; ++size) {
    for_each_subset_of_size(k, size, [&](std::uint64_t s) {
      batch.push_back(s);
      return batch.size() < 4096 || flush();
    });
    if (ok) flush();
  }
  return ok;
}

bool is_extendable(const Family& family) {
  const unsigned k = family.k();
  require_exhaustive(k + 1);
  if (!is_splitting_family(family)) throw ContractViolation("is_extendable requires a splitting family");
  if (family.size() >= 32) throw CapacityError("is_extendable supports fewer than 32 members");
  const std::uint64_t bit = std::uint64_t{1} << k;
  std::vector<std::uint64_t> masks(family.masks().begin(), family.masks().end());
  const std::uint32_t choices = std::uint32_t{1} << family.size();
  for (std::uint32_t c = 0; c < choices; ++c) {
    for (std::size_t i = 0; i < masks.size(); ++i) {
      masks[i] = family.masks()[i] | (((c >> i) & 1U) ? bit : 0);
    }
    if (!kernels::first_unsplit_range(masks, bit, bit << 1)) return true;
  }
  return false;
}

bool is_uniform(const Family& family) {
  const SplitWindow w = split_window(family.k());
  return std::all_of(family.masks().begin(), family.masks().end(),
                     [&](std::uint64_t m) { return w.contains(static_cast<unsigned>(std::popcount(m))); });
}

Family canonical_form(const Family& family) {
  const unsigned n = static_cast<unsigned>(family.size());
  const unsigned k = family.k();
  if (n > kMaxCanonicalSets) throw CapacityError("canonical_form supports at most 8 members");
  if (n == 0) return family;

  const std::uint32_t values = std::uint32_t{1} << n;
  std::vector<std::uint32_t> hist(values, 0);
  const auto cols = columns_of(family);
  for (std::uint32_t c : cols) ++hist[c];
  std::vector<std::uint32_t> present;
  for (std::uint32_t v = 0; v < values; ++v) {
    if (hist[v] != 0) present.push_back(v);
  }

  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0U);
  std::vector<std::uint32_t> forward(values);
  std::vector<std::uint32_t> inverse(values);
  std::vector<std::uint32_t> best;
  std::vector<std::uint32_t> candidate(k);
  do {
    // Bit j of the image is bit perm[j] of the source.
    for (std::uint32_t v = 0; v < values; ++v) {
      std::uint32_t image = 0;
      for (unsigned j = 0; j < n; ++j) image |= ((v >> perm[j]) & 1U) << j;
      forward[v] = image;
      inverse[image] = v;
    }
    // The least sorted list starts at 0, so the complement mask maps some
    // present column to 0.
    for (std::uint32_t v : present) {
      const std::uint32_t flip = forward[v];
      bool better = best.empty();
      std::size_t pos = 0;
      bool decided = better;
      for (std::uint32_t w = 0; w < values && pos < k; ++w) {
        const std::uint32_t cnt = hist[inverse[w ^ flip]];
        for (std::uint32_t r = 0; r < cnt; ++r, ++pos) {
          if (!decided) {
            if (w < best[pos]) {
              better = decided = true;
            } else if (w > best[pos]) {
              decided = true;
            }
            if (decided && !better) break;
          }
          candidate[pos] = w;
        }
        if (decided && !better) break;
      }
      if (better) best = candidate;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return family_from_columns(k, n, best);
}

bool equivalent(const Family& a, const Family& b) {
  if (a.k() != b.k() || a.size() != b.size()) return false;
  return canonical_form(a) == canonical_form(b);
}

std::vector<FamilyClass> enumerate_minimal_splitting_families(unsigned k, const EnumerationOptions& options) {
  const unsigned limit = options.extended ? kMaxExtendedGround : kMaxEnumerationGround;
  if (k > limit) {
    throw CapacityError("enumeration of minimal splitting families supports k <= " + std::to_string(limit) +
                        (options.extended ? "" : " (extended mode raises this to 16)"));
  }
  if (k == 0) throw ContractViolation("enumeration requires k >= 1");
  const unsigned n = (k + 1) / 2;
  const Family standard = canonical_form(standard_family(k));

  std::mutex mutex;
  std::map<std::vector<std::uint64_t>, Family> classes;
  ColumnSearch search{k, n, 1, new_subsets_split, [&](std::span<const std::uint32_t> cols) {
                        Family canon = canonical_form(family_from_columns(k, n, cols));
                        std::vector<std::uint64_t> key(canon.masks().begin(), canon.masks().end());
                        std::lock_guard lock(mutex);
                        classes.try_emplace(std::move(key), std::move(canon));
                        return true;
                      }};
  search.run(options.threads);

  std::vector<FamilyClass> out;
  out.reserve(classes.size());
  for (auto& [key, canon] : classes) {
    FamilyClass c;
    c.size = static_cast<unsigned>(canon.size());
    c.uniform = is_uniform(canon);
    c.standard_equivalent = canon == standard;
    c.canonical = std::move(canon);
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<Family> find_splitting_family_of_size(unsigned k, unsigned sets, unsigned threads) {
  if (k > kMaxExtendedGround) throw CapacityError("find_splitting_family_of_size supports k <= 16");
  if (sets == 0) return std::nullopt;
  if (sets < 32 && (std::uint64_t{1} << sets) < k) return std::nullopt;
  if (sets > 16) throw CapacityError("find_splitting_family_of_size supports at most 16 members");

  std::mutex mutex;
  std::optional<Family> found;
  ColumnSearch search{k, sets, 1, new_subsets_split, [&](std::span<const std::uint32_t> cols) {
                        std::lock_guard lock(mutex);
                        if (!found) found = family_from_columns(k, sets, cols);
                        return false;
                      }};
  search.run(threads);
  return found;
}

bool HammingRep::adjacent(std::uint32_t s, std::uint32_t t) { return std::popcount(s ^ t) == 1; }

unsigned HammingRep::weight(std::uint32_t s) { return static_cast<unsigned>(std::popcount(s)); }

std::vector<std::uint32_t> HammingRep::vertices() const {
  std::vector<std::uint32_t> v(columns);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

unsigned HammingRep::degree(std::uint32_t s) const {
  const auto v = vertices();
  return static_cast<unsigned>(std::count_if(v.begin(), v.end(), [&](std::uint32_t t) { return adjacent(s, t); }));
}

std::size_t HammingRep::edge_count() const {
  const auto v = vertices();
  std::size_t edges = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) edges += adjacent(v[i], v[j]) ? 1 : 0;
  }
  return edges;
}

HammingRep hamming_representation(const Family& family) {
  if (family.size() > 16) throw CapacityError("the Hamming representation supports at most 16 members");
  return HammingRep{static_cast<unsigned>(family.size()), columns_of(family)};
}

char to_char(YKind kind) { return static_cast<char>('a' + static_cast<int>(kind)); }

namespace {

bool subset_of(std::uint32_t a, std::uint32_t b) { return (a & ~b) == 0; }

bool matches(YKind kind, const std::array<std::uint32_t, 4>& v) {
  switch (kind) {
    case YKind::A: {
      // x, and three supersets x + y + u_i with nonempty, pairwise disjoint u_i.
      const std::uint32_t p = v[0];
      if (!subset_of(p, v[1]) || !subset_of(p, v[2]) || !subset_of(p, v[3])) return false;
      const std::uint32_t common = v[1] & v[2] & v[3];
      const std::uint32_t u1 = v[1] & ~common;
      const std::uint32_t u2 = v[2] & ~common;
      const std::uint32_t u3 = v[3] & ~common;
      return u1 != 0 && u2 != 0 && u3 != 0 && (u1 & u2) == 0 && (u1 & u3) == 0 && (u2 & u3) == 0;
    }
    case YKind::B: {
      // p strictly inside m; q1, q2 contain m and differ from it on disjoint parts.
      const std::uint32_t p = v[0];
      const std::uint32_t m = v[1];
      if (!subset_of(p, m) || p == m || !subset_of(m, v[2]) || !subset_of(m, v[3])) return false;
      return ((v[2] & ~m) & (v[3] & ~m)) == 0;
    }
    case YKind::C: {
      // Incomparable p1, p2 with union m, and q strictly containing m.
      const std::uint32_t m = v[2];
      if (subset_of(v[0], v[1]) || subset_of(v[1], v[0])) return false;
      return (v[0] | v[1]) == m && subset_of(m, v[3]) && v[3] != m;
    }
    case YKind::D: {
      // m the union of p1, p2, p3, every index of a p_i shared with another p_j.
      if ((v[0] | v[1] | v[2]) != v[3]) return false;
      return (v[0] & ~(v[1] | v[2])) == 0 && (v[1] & ~(v[0] | v[2])) == 0 && (v[2] & ~(v[0] | v[1])) == 0;
    }
  }
  return false;
}

}  // namespace

std::optional<YKind> classify_y(const std::array<std::uint32_t, 4>& vertices) {
  for (YKind kind : {YKind::A, YKind::B, YKind::C, YKind::D}) {
    std::array<unsigned, 4> order{0, 1, 2, 3};
    do {
      const std::array<std::uint32_t, 4> v{vertices[order[0]], vertices[order[1]], vertices[order[2]],
                                           vertices[order[3]]};
      if (matches(kind, v)) return kind;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return std::nullopt;
}

std::optional<YWitness> find_forbidden_y(const HammingRep& rep) {
  if (rep.columns.size() > 64) throw CapacityError("find_forbidden_y supports at most 64 columns");
  const auto v = rep.vertices();
  for (std::uint32_t s : v) {
    std::vector<std::uint32_t> nbrs;
    for (std::uint32_t t : v) {
      if (HammingRep::adjacent(s, t)) nbrs.push_back(t);
    }
    if (nbrs.size() >= 3) {
      const std::array<std::uint32_t, 4> four{s, nbrs[0], nbrs[1], nbrs[2]};
      if (auto kind = classify_y(four)) return YWitness{*kind, four};
    }
  }
  const std::size_t size = v.size();
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = a + 1; b < size; ++b) {
      for (std::size_t c = b + 1; c < size; ++c) {
        for (std::size_t d = c + 1; d < size; ++d) {
          const std::array<std::uint32_t, 4> four{v[a], v[b], v[c], v[d]};
          if (auto kind = classify_y(four)) return YWitness{*kind, four};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_connected(const HammingRep& rep) {
  const auto v = rep.vertices();
  if (v.empty()) return true;
  std::vector<bool> seen(v.size(), false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!seen[j] && HammingRep::adjacent(v[i], v[j])) {
        seen[j] = true;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == v.size();
}

std::string_view to_string(ConnectedClass c) {
  switch (c) {
    case ConnectedClass::Standard:
      return "standard";
    case ConnectedClass::RestrictionOfStandard:
      return "restriction-of-standard";
    case ConnectedClass::NotApplicable:
      return "not-applicable";
    case ConnectedClass::Counterexample:
      return "counterexample";
  }
  return "unknown";
}

ConnectedClass classify_connected_le4_minimal(const Family& family) {
  const unsigned k = family.k();
  if (k == 0 || family.size() != (k + 1) / 2) return ConnectedClass::NotApplicable;
  if (std::any_of(family.masks().begin(), family.masks().end(), [](std::uint64_t m) { return m == 0; })) {
    return ConnectedClass::NotApplicable;
  }
  if (!is_t_splitting_family(family, std::min(k, 4U), SizeMode::AtMost)) return ConnectedClass::NotApplicable;
  const HammingRep rep = hamming_representation(family);
  if (!is_connected(rep)) return ConnectedClass::NotApplicable;

  const std::size_t edges = rep.edge_count();
  const bool cycle = k >= 3 && edges == k;
  const bool path = edges + 1 == k;
  if (cycle) return equivalent(family, standard_family(k)) ? ConnectedClass::Standard : ConnectedClass::Counterexample;
  if (path && k % 2 == 1 && equivalent(family, restrict_family(standard_family(k + 1), k))) {
    return ConnectedClass::RestrictionOfStandard;
  }
  if (equivalent(family, standard_family(k))) return ConnectedClass::Standard;
  return ConnectedClass::Counterexample;
}

TSplittingResult min_t_splitting_size(unsigned k, unsigned t, SizeMode mode, unsigned threads) {
  if (k > kMaxEnumerationGround) throw CapacityError("min_t_splitting_size supports k <= 10");
  if (t < 2 || t > std::min(k, 6U)) throw ContractViolation("min_t_splitting_size requires 2 <= t <= min(k, 6)");

  // Targets whose largest element is m, grouped by m.
  std::vector<std::vector<std::uint64_t>> targets(k);
  const unsigned smallest = mode == SizeMode::Exactly ? t : 1;
  for (unsigned size = smallest; size <= t; ++size) {
    for_each_subset_of_size(k, size, [&](std::uint64_t s) {
      targets[std::bit_width(s) - 1].push_back(s);
      return true;
    });
  }
  auto extend_ok = [&](std::span<const std::uint64_t> masks, unsigned m) {
    return !kernels::first_unsplit_list(masks, targets[m]).has_value();
  };
  // Two equal columns leave a pair unsplit; t equal columns leave a t-set unsplit.
  const unsigned max_mult = mode == SizeMode::AtMost ? 1 : t - 1;

  for (unsigned n = 1;; ++n) {
    std::mutex mutex;
    std::optional<Family> found;
    ColumnSearch search{k, n, max_mult, extend_ok, [&](std::span<const std::uint32_t> cols) {
                          std::lock_guard lock(mutex);
                          if (!found) found = family_from_columns(k, n, cols);
                          return false;
                        }};
    search.run(threads);
    if (found) return {n, *found};
  }
}

}  // namespace splitkit
