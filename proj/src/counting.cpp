#include "splitkit/counting.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "splitkit/error.hpp"
#include "splitkit/kernels.hpp"
#include "splitkit/parallel.hpp"

namespace splitkit {

namespace {

using u128 = unsigned __int128;

constexpr unsigned kMaxRegionSets = 8;
constexpr unsigned kMaxWideGround = 120;
constexpr std::uint64_t kMaxDenseStates = std::uint64_t{1} << 22;

BigCount to_big(u128 v) {
  BigCount hi = static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64));
  BigCount lo = static_cast<unsigned long>(static_cast<std::uint64_t>(v));
  return (hi << 64) + lo;
}

BigCount binomial(std::uint64_t n, std::int64_t r) {
  if (r < 0 || static_cast<std::uint64_t>(r) > n) return 0;
  BigCount out;
  mpz_bin_uiui(out.get_mpz_t(), n, static_cast<unsigned long>(r));
  return out;
}

BigCount pow2(std::uint64_t e) {
  BigCount out = 1;
  out <<= static_cast<mp_bitcnt_t>(e);
  return out;
}

const std::array<std::array<u128, kMaxWideGround + 1>, kMaxWideGround + 1>& pascal() {
  static const auto table = [] {
    std::array<std::array<u128, kMaxWideGround + 1>, kMaxWideGround + 1> t{};
    for (unsigned n = 0; n <= kMaxWideGround; ++n) {
      t[n][0] = 1;
      for (unsigned r = 1; r <= n; ++r) t[n][r] = t[n - 1][r - 1] + (r <= n - 1 ? t[n - 1][r] : 0);
    }
    return t;
  }();
  return table;
}

struct RegionProblem {
  unsigned n = 0;
  std::vector<std::uint64_t> lo;
  std::vector<std::uint64_t> hi;
  // Nonzero inside regions: (membership mask, size).
  std::vector<std::pair<std::uint32_t, std::uint64_t>> parts;
  std::uint64_t outside = 0;
};

RegionProblem make_problem(const RegionVector& regions) {
  if (regions.n() > kMaxRegionSets) throw ContractViolation("region counting supports n <= 8");
  RegionProblem p;
  p.n = regions.n();
  for (unsigned i = 0; i < p.n; ++i) {
    const std::uint64_t size = regions.member_size(i);
    p.lo.push_back(size / 2);
    p.hi.push_back((size + 1) / 2);
  }
  for (std::size_t r = 1; r < regions.region_count(); ++r) {
    if (regions[r] != 0) p.parts.emplace_back(static_cast<std::uint32_t>(r), regions[r]);
  }
  p.outside = regions[0];
  return p;
}

// Dense table over partial intersection counts (count_i <= hi_i), one region
// at a time.
template <class V, class Binom>
std::optional<V> dense_count(const RegionProblem& p, Binom&& binom) {
  std::vector<std::uint64_t> stride(p.n + 1, 1);
  for (unsigned i = 0; i < p.n; ++i) {
    const std::uint64_t radix = p.hi[i] + 1;
    if (stride[i] > kMaxDenseStates / radix) return std::nullopt;
    stride[i + 1] = stride[i] * radix;
  }
  const std::uint64_t states = stride[p.n];
  std::vector<V> cur(states, V(0));
  std::vector<V> next(states, V(0));
  cur[0] = 1;
  for (const auto& [mask, size] : p.parts) {
    std::fill(next.begin(), next.end(), V(0));
    std::uint64_t step = 0;
    for (unsigned i = 0; i < p.n; ++i) {
      if ((mask >> i) & 1U) step += stride[i];
    }
    for (std::uint64_t s = 0; s < states; ++s) {
      if (cur[s] == 0) continue;
      std::uint64_t room = size;
      for (unsigned i = 0; i < p.n; ++i) {
        if ((mask >> i) & 1U) room = std::min(room, p.hi[i] - (s / stride[i]) % (p.hi[i] + 1));
      }
      for (std::uint64_t c = 0; c <= room; ++c) next[s + c * step] += cur[s] * binom(size, c);
    }
    std::swap(cur, next);
  }
  V total = 0;
  for (std::uint64_t s = 0; s < states; ++s) {
    if (cur[s] == 0) continue;
    bool ok = true;
    for (unsigned i = 0; i < p.n && ok; ++i) ok = (s / stride[i]) % (p.hi[i] + 1) >= p.lo[i];
    if (ok) total += cur[s];
  }
  return total;
}

void dfs_count(const RegionProblem& p, std::size_t index, std::vector<std::uint64_t>& counts,
               const std::vector<std::vector<std::uint64_t>>& remaining, const BigCount& weight, BigCount& total) {
  if (index == p.parts.size()) {
    total += weight;
    return;
  }
  const auto [mask, size] = p.parts[index];
  std::uint64_t room = size;
  std::uint64_t need = 0;
  for (unsigned i = 0; i < p.n; ++i) {
    if (((mask >> i) & 1U) == 0) continue;
    room = std::min(room, p.hi[i] - counts[i]);
    // Points still needed after this region, beyond what later regions can supply.
    const std::uint64_t later = remaining[index + 1][i];
    if (counts[i] + later < p.lo[i]) need = std::max(need, p.lo[i] - counts[i] - later);
  }
  for (std::uint64_t c = need; c <= room; ++c) {
    for (unsigned i = 0; i < p.n; ++i) {
      if ((mask >> i) & 1U) counts[i] += c;
    }
    dfs_count(p, index + 1, counts, remaining, weight * binomial(size, static_cast<std::int64_t>(c)), total);
    for (unsigned i = 0; i < p.n; ++i) {
      if ((mask >> i) & 1U) counts[i] -= c;
    }
  }
}

BigCount two_set_even(std::uint64_t a1, std::uint64_t b, std::uint64_t a2, std::uint64_t d) {
  const auto t1 = static_cast<std::int64_t>((a1 + b) / 2);
  const auto t2 = static_cast<std::int64_t>((a2 + b) / 2);
  BigCount sum = 0;
  for (std::uint64_t i = 0; i <= b; ++i) {
    const auto si = static_cast<std::int64_t>(i);
    sum += binomial(a1, t1 - si) * binomial(b, si) * binomial(a2, t2 - si);
  }
  return sum * pow2(d);
}

std::vector<std::vector<unsigned>> permutations(unsigned n) {
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0U);
  std::vector<std::vector<unsigned>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

MinResult finish(std::vector<std::pair<BigCount, RegionVector>> scored) {
  MinResult result;
  if (scored.empty()) return result;
  result.count = std::min_element(scored.begin(), scored.end(), [](const auto& x, const auto& y) {
                   return x.first < y.first;
                 })->first;
  std::set<RegionVector> classes;
  for (auto& [count, r] : scored) {
    if (count == result.count) classes.insert(canonical_regions(r));
  }
  result.all_minimizers.assign(classes.begin(), classes.end());
  result.arrangement = result.all_minimizers.front();
  return result;
}

}  // namespace

BigCount count_splitters(const Family& family, unsigned threads) {
  const unsigned k = family.k();
  if (k > 24) throw CapacityError("count_splitters enumerates 2^k subsets and supports k <= 24");
  const std::uint64_t total = std::uint64_t{1} << k;
  const std::uint64_t chunks = std::min<std::uint64_t>(64, total);
  const std::uint64_t width = (total + chunks - 1) / chunks;
  std::atomic<std::uint64_t> count{0};
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::uint64_t begin = c * width;
    const std::uint64_t end = std::min(total, begin + width);
    if (begin < end) count += kernels::count_common_splitters(family.masks(), begin, end);
  });
  return static_cast<unsigned long>(count.load());
}

BigCount count_splitters_regions(const RegionVector& regions) {
  const RegionProblem p = make_problem(regions);
  if (regions.k() <= kMaxWideGround) {
    const auto& table = pascal();
    if (auto v = dense_count<u128>(p, [&](std::uint64_t n, std::uint64_t r) { return table[n][r]; })) {
      return to_big(*v << p.outside);
    }
  } else if (auto v = dense_count<BigCount>(
                 p, [](std::uint64_t n, std::uint64_t r) { return binomial(n, static_cast<std::int64_t>(r)); })) {
    return *v * pow2(p.outside);
  }
  return count_splitters_regions_dfs(regions);
}

BigCount count_splitters_regions_dfs(const RegionVector& regions) {
  const RegionProblem p = make_problem(regions);
  std::vector<std::vector<std::uint64_t>> remaining(p.parts.size() + 1, std::vector<std::uint64_t>(p.n, 0));
  for (std::size_t j = p.parts.size(); j-- > 0;) {
    remaining[j] = remaining[j + 1];
    for (unsigned i = 0; i < p.n; ++i) {
      if ((p.parts[j].first >> i) & 1U) remaining[j][i] += p.parts[j].second;
    }
  }
  for (unsigned i = 0; i < p.n; ++i) {
    if (remaining[0][i] < p.lo[i]) return 0;
  }
  std::vector<std::uint64_t> counts(p.n, 0);
  BigCount total = 0;
  dfs_count(p, 0, counts, remaining, BigCount(1), total);
  return total * pow2(p.outside);
}

BigCount splitters_one_set(std::uint64_t b_size, std::uint64_t k) {
  if (b_size > k) throw ContractViolation("set size exceeds k");
  if (b_size % 2 == 0) return pow2(k - b_size) * binomial(b_size, static_cast<std::int64_t>(b_size / 2));
  return pow2(k - b_size + 1) * binomial(b_size, static_cast<std::int64_t>((b_size - 1) / 2));
}

BigCount splitters_two_set(const Arrangement2& a) {
  std::uint64_t a1 = a.a1;
  std::uint64_t a2 = a.a2;
  const bool odd1 = (a1 + a.b) % 2 == 1;
  const bool odd2 = (a2 + a.b) % 2 == 1;
  if (odd1) ++a1;
  if (odd2) ++a2;
  return two_set_even(a1, a.b, a2, a.d);
}

double approx_splitters_two_set(const Arrangement2& a) {
  const double a1 = static_cast<double>(a.a1);
  const double b = static_cast<double>(a.b);
  const double a2 = static_cast<double>(a.a2);
  const double radicand = a1 * a2 + a1 * b + a2 * b;
  if (radicand == 0) {
    throw DomainError("approximation undefined for " + a.to_string() + ": a1*a2 + a1*b + a2*b = 0");
  }
  return std::ldexp(1.0, static_cast<int>(a.k() + 1)) / (std::numbers::pi * std::sqrt(radicand));
}

BigCount franel(unsigned m) {
  BigCount sum = 0;
  for (unsigned i = 0; i <= m; ++i) {
    const BigCount c = binomial(m, i);
    sum += c * c * c;
  }
  return sum;
}

RegionVector canonical_regions(const RegionVector& regions) {
  RegionVector best = regions;
  std::vector<unsigned> perm(regions.n());
  std::iota(perm.begin(), perm.end(), 0U);
  while (std::next_permutation(perm.begin(), perm.end())) {
    RegionVector candidate = regions.permute_sets(perm);
    if (candidate < best) best = std::move(candidate);
  }
  return best;
}

MinResult min_one_set(unsigned k) {
  if (k == 0) throw ContractViolation("min_one_set requires k >= 1");
  std::vector<std::pair<BigCount, RegionVector>> scored;
  for (std::uint64_t b = 0; b <= k; ++b) scored.emplace_back(splitters_one_set(b, k), RegionVector(1, {k - b, b}));
  return finish(std::move(scored));
}

MinResult min_two_set(unsigned k) {
  if (k < 3) throw ContractViolation("min_two_set requires k >= 3");
  std::vector<std::pair<BigCount, RegionVector>> scored;
  for (std::uint64_t a1 = 0; a1 <= k; ++a1) {
    for (std::uint64_t b = 0; a1 + b <= k; ++b) {
      for (std::uint64_t a2 = 0; a1 + b + a2 <= k; ++a2) {
        const Arrangement2 a{a1, b, a2, k - a1 - b - a2};
        scored.emplace_back(splitters_two_set(a), a.to_regions());
      }
    }
  }
  return finish(std::move(scored));
}

Arrangement2 theorem_two_set_arrangement(unsigned k) {
  if (k < 3) throw ContractViolation("the two-set theorem applies for k >= 3");
  switch (k % 3) {
    case 0:
      return {k / 3, k / 3, k / 3, 0};
    case 1: {
      const std::uint64_t m = (k + 2) / 3;
      return {m - 2, m, m, 0};
    }
    default: {
      const std::uint64_t m = (k - 2) / 3;
      return {m, m, m + 2, 0};
    }
  }
}

bool matches_two_set_theorem(const Arrangement2& a) {
  if (a.d != 0 || a.k() < 3) return false;
  const Arrangement2 t = theorem_two_set_arrangement(static_cast<unsigned>(a.k()));
  std::array<std::uint64_t, 3> x{a.a1, a.b, a.a2};
  std::array<std::uint64_t, 3> y{t.a1, t.b, t.a2};
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

MinResult min_three_set(unsigned k, const ThreeSetOptions& options) {
  const unsigned limit = options.extended ? 24 : 16;
  if (k < 3) throw ContractViolation("min_three_set requires k >= 3");
  if (k > limit) {
    throw CapacityError("min_three_set supports k <= " + std::to_string(limit) +
                        (options.extended ? "" : " (extended mode raises this to 24)"));
  }
  const auto perms = permutations(3);

  // Best splittable arrangements with nothing outside, for every total j <= k.
  struct Level {
    BigCount count;
    std::vector<RegionVector> minimizers;
  };
  std::vector<Level> levels(k + 1);
  for (unsigned j = 0; j <= k; ++j) {
    // Regions 1..7; the first part is distributed across workers.
    std::vector<Level> partial(j + 1);
    parallel_for(j + 1, options.threads, [&](std::size_t first) {
      Level& out = partial[first];
      std::array<std::uint64_t, 8> sizes{};
      sizes[1] = first;
      auto visit = [&](auto&& self, unsigned region, std::uint64_t left) -> void {
        if (region == 7) {
          sizes[7] = left;
          RegionVector r(3, std::vector<std::uint64_t>(sizes.begin(), sizes.end()));
          for (const auto& perm : perms) {
            if (r.permute_sets(perm) < r) return;
          }
          BigCount c = count_splitters_regions(r);
          if (c == 0) return;
          if (out.minimizers.empty() || c < out.count) {
            out.count = c;
            out.minimizers.clear();
          }
          if (c == out.count) out.minimizers.push_back(std::move(r));
          return;
        }
        for (std::uint64_t s = 0; s <= left; ++s) {
          sizes[region] = s;
          self(self, region + 1, left - s);
        }
      };
      visit(visit, 2, j - first);
    });
    Level& level = levels[j];
    for (auto& p : partial) {
      if (p.minimizers.empty()) continue;
      if (level.minimizers.empty() || p.count < level.count) {
        level.count = p.count;
        level.minimizers.clear();
      }
      if (p.count == level.count) {
        level.minimizers.insert(level.minimizers.end(), p.minimizers.begin(), p.minimizers.end());
      }
    }
  }

  MinResult result;
  for (unsigned d = 0; d <= k; ++d) {
    const Level& level = levels[k - d];
    const BigCount c = level.count * pow2(d);
    if (result.all_minimizers.empty() || c < result.count) {
      result.count = c;
      result.all_minimizers.clear();
    }
    if (c == result.count) {
      for (RegionVector r : level.minimizers) {
        r[0] = d;
        result.all_minimizers.push_back(std::move(r));
      }
    }
  }
  std::sort(result.all_minimizers.begin(), result.all_minimizers.end());
  result.arrangement = result.all_minimizers.front();
  return result;
}

RegionVector figure5_pattern(unsigned k) {
  if (k < 4) throw ContractViolation("the repeating pattern starts at k = 4");
  static constexpr std::array<std::uint64_t, 6> kOffset{3, 4, 5, 6, 1, 2};
  const unsigned r = k % 6;
  const std::uint64_t l = (k - kOffset[r]) / 3;
  RegionVector v = RegionVector::zeros(3);
  // Regions: 1 = {1}, 3 = {1,2}, 5 = {1,3}, 6 = {2,3}, 7 = center.
  switch (r) {
    case 0:
      v[1] = 1, v[6] = l + 1, v[5] = l, v[3] = l, v[7] = 1;
      break;
    case 1:
      v[6] = l + 2, v[5] = l, v[3] = l, v[7] = 2;
      break;
    case 2:
      v[1] = 1, v[6] = l + 3, v[5] = l, v[3] = l, v[7] = 1;
      break;
    case 3:
      v[6] = l, v[5] = l + 2, v[3] = l + 2, v[7] = 2;
      break;
    case 4:
      v[1] = 1, v[6] = l - 1, v[5] = l, v[3] = l, v[7] = 1;
      break;
    default:
      v[6] = l, v[5] = l, v[3] = l, v[7] = 2;
      break;
  }
  return v;
}

bool matches_figure5(const MinResult& result, unsigned k) {
  const RegionVector target = canonical_regions(figure5_pattern(k));
  return std::any_of(result.all_minimizers.begin(), result.all_minimizers.end(),
                     [&](const RegionVector& r) { return canonical_regions(r) == target; });
}

bool check_three_set_recurrence(const std::map<unsigned, BigCount>& counts) {
  if (counts.empty() || counts.begin()->first != 6) {
    throw ContractViolation("recurrence check needs keys starting at k = 6");
  }
  unsigned expected = 6;
  for (const auto& [k, v] : counts) {
    if (k != expected++) throw ContractViolation("recurrence check needs contiguous keys");
  }
  if (counts.begin()->second != 4) return false;
  for (auto it = counts.begin(); std::next(it) != counts.end(); ++it) {
    const unsigned k = it->first;
    if (it->second == 0) return false;
    mpq_class ratio(std::next(it)->second, it->second);
    ratio.canonicalize();
    const mpq_class want = k % 2 == 0 ? mpq_class(2) - mpq_class(1, k / 6 + 1) : mpq_class(2);
    if (ratio != want) return false;
  }
  return true;
}

std::string LemmaViolation::to_string() const {
  return lemma + ": splitters" + lhs.to_string() + " = " + lhs_count.get_str() + ", splitters" + rhs.to_string() +
         " = " + rhs_count.get_str();
}

std::vector<LemmaViolation> verify_point_moving_lemmas(unsigned k) {
  if (k > 15) throw CapacityError("lemma verification supports k <= 15");
  std::vector<LemmaViolation> out;
  auto record = [&](const char* lemma, const Arrangement2& lhs, const BigCount& lc, const Arrangement2& rhs,
                    const BigCount& rc) { out.push_back({lemma, lhs, rhs, lc, rc}); };

  for (std::uint64_t a1 = 0; a1 <= k; ++a1) {
    for (std::uint64_t b = 0; a1 + b <= k; ++b) {
      for (std::uint64_t a2 = 0; a1 + b + a2 <= k; ++a2) {
        const std::uint64_t d = k - a1 - b - a2;
        const Arrangement2 a{a1, b, a2, d};
        const BigCount s = splitters_two_set(a);
        const bool even = (a1 + b) % 2 == 0 && (a2 + b) % 2 == 0;

        if (even) {
          std::array<std::uint64_t, 3> p{a1, b, a2};
          std::sort(p.begin(), p.end());
          do {
            const Arrangement2 q{p[0], p[1], p[2], d};
            const BigCount sq = splitters_two_set(q);
            if (sq != s) record("swap", a, s, q, sq);
          } while (std::next_permutation(p.begin(), p.end()));
        }

        if (even && d == 0) {
          for (int e1 = -1; e1 <= 1; ++e1) {
            for (int e2 = -1; e2 <= 1; ++e2) {
              const auto na1 = static_cast<std::int64_t>(a1) + e1;
              const auto nb = static_cast<std::int64_t>(b) - e1 - e2;
              const auto na2 = static_cast<std::int64_t>(a2) + e2;
              if (na1 < 0 || nb < 0 || na2 < 0) continue;
              const Arrangement2 q{static_cast<std::uint64_t>(na1), static_cast<std::uint64_t>(nb),
                                   static_cast<std::uint64_t>(na2), 0};
              const BigCount sq = splitters_two_set(q);
              if (s > sq) record("no_odd", a, s, q, sq);
            }
          }
        }

        if (b > 0 && d > 0) {
          const Arrangement2 q{a1 + 1, b - 1, a2 + 1, d - 1};
          const BigCount sq = splitters_two_set(q);
          if (sq > s) record("ext_zero", q, sq, a, s);
        }

        if (even && d == 0 && 2 <= a1 && a1 <= a2) {
          const Arrangement2 q{a1 - 2, b, a2 + 2, 0};
          const BigCount sq = splitters_two_set(q);
          if (s > sq) record("two_point", a, s, q, sq);
        }
      }
    }
  }
  return out;
}

}  // namespace splitkit
