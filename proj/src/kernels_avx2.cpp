// AVX2 variants of the bitmask kernels. This file is compiled with -mavx2 on
// x86-64 and must only be entered after a runtime CPU check.

#include <bit>

#include "splitkit/kernels.hpp"
#include "splitkit/setcore.hpp"

#if defined(SPLITKIT_HAVE_AVX2)
#include <immintrin.h>
#endif

namespace splitkit::kernels::avx2 {

#if defined(SPLITKIT_HAVE_AVX2)

namespace {

// Per-lane popcount of four 64-bit words: nibble lookup, then byte sums.
inline __m256i popcount64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i nibble = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, nibble);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), nibble);
  const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

// All-ones in lanes where count lies outside [lo, hi].
inline __m256i outside_window(__m256i count, __m256i lo, __m256i hi) {
  return _mm256_or_si256(_mm256_cmpgt_epi64(count, hi), _mm256_cmpgt_epi64(lo, count));
}

inline int lane_mask(__m256i v) { return _mm256_movemask_pd(_mm256_castsi256_pd(v)); }

// Bit i set iff lane i of `targets` is split by some family member.
inline int split_lanes(std::span<const std::uint64_t> family, __m256i targets) {
  const __m256i size = popcount64(targets);
  const __m256i lo = _mm256_srli_epi64(size, 1);
  const __m256i hi = _mm256_srli_epi64(_mm256_add_epi64(size, _mm256_set1_epi64x(1)), 1);
  int split = 0;
  for (std::uint64_t a : family) {
    const __m256i meet = popcount64(_mm256_and_si256(targets, _mm256_set1_epi64x(static_cast<long long>(a))));
    split |= ~lane_mask(outside_window(meet, lo, hi)) & 0xF;
    if (split == 0xF) break;
  }
  return split;
}

}  // namespace

bool compiled() { return true; }

std::uint64_t count_common_splitters(std::span<const std::uint64_t> members, std::uint64_t begin,
                                     std::uint64_t end) {
  const std::size_t n = members.size();
  // Up to 64 members on the stack; larger families fall back to the reference.
  if (n > 64) return scalar::count_common_splitters(members, begin, end);
  __m256i set[64];
  __m256i lo[64];
  __m256i hi[64];
  for (std::size_t j = 0; j < n; ++j) {
    const SplitWindow w = split_window(static_cast<unsigned>(std::popcount(members[j])));
    set[j] = _mm256_set1_epi64x(static_cast<long long>(members[j]));
    lo[j] = _mm256_set1_epi64x(w.lo);
    hi[j] = _mm256_set1_epi64x(w.hi);
  }

  std::uint64_t count = 0;
  std::uint64_t a = begin;
  if (end - begin >= 4) {
    __m256i lanes = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(a)), _mm256_setr_epi64x(0, 1, 2, 3));
    const __m256i step = _mm256_set1_epi64x(4);
    for (; end - a >= 4; a += 4) {
      int bad = 0;
      for (std::size_t j = 0; j < n && bad != 0xF; ++j) {
        bad |= lane_mask(outside_window(popcount64(_mm256_and_si256(lanes, set[j])), lo[j], hi[j]));
      }
      count += 4 - static_cast<unsigned>(std::popcount(static_cast<unsigned>(bad)));
      lanes = _mm256_add_epi64(lanes, step);
    }
  }
  return count + scalar::count_common_splitters(members, a, end);
}

std::optional<std::uint64_t> first_unsplit_range(std::span<const std::uint64_t> family, std::uint64_t begin,
                                                 std::uint64_t end) {
  std::uint64_t b = begin;
  if (end - begin >= 4) {
    __m256i lanes = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(b)), _mm256_setr_epi64x(0, 1, 2, 3));
    const __m256i step = _mm256_set1_epi64x(4);
    for (; end - b >= 4; b += 4) {
      const int split = split_lanes(family, lanes);
      if (split != 0xF) return b + static_cast<unsigned>(std::countr_one(static_cast<unsigned>(split)));
      lanes = _mm256_add_epi64(lanes, step);
    }
  }
  return scalar::first_unsplit_range(family, b, end);
}

std::optional<std::uint64_t> first_unsplit_list(std::span<const std::uint64_t> family,
                                                std::span<const std::uint64_t> targets) {
  std::size_t i = 0;
  for (; i + 4 <= targets.size(); i += 4) {
    const __m256i lanes = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(targets.data() + i));
    const int split = split_lanes(family, lanes);
    if (split != 0xF) return targets[i + static_cast<unsigned>(std::countr_one(static_cast<unsigned>(split)))];
  }
  return scalar::first_unsplit_list(family, targets.subspan(i));
}

#else

bool compiled() { return false; }

std::uint64_t count_common_splitters(std::span<const std::uint64_t> members, std::uint64_t begin,
                                     std::uint64_t end) {
  return scalar::count_common_splitters(members, begin, end);
}

std::optional<std::uint64_t> first_unsplit_range(std::span<const std::uint64_t> family, std::uint64_t begin,
                                                 std::uint64_t end) {
  return scalar::first_unsplit_range(family, begin, end);
}

std::optional<std::uint64_t> first_unsplit_list(std::span<const std::uint64_t> family,
                                                std::span<const std::uint64_t> targets) {
  return scalar::first_unsplit_list(family, targets);
}

#endif

}  // namespace splitkit::kernels::avx2
