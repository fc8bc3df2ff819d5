#include <bit>
#include <vector>

#include "splitkit/kernels.hpp"
#include "splitkit/setcore.hpp"

namespace splitkit::kernels::scalar {

namespace {

bool split_by_any(std::span<const std::uint64_t> family, std::uint64_t target) {
  const SplitWindow w = split_window(static_cast<unsigned>(std::popcount(target)));
  for (std::uint64_t a : family) {
    if (w.contains(static_cast<unsigned>(std::popcount(a & target)))) return true;
  }
  return false;
}

}  // namespace

std::uint64_t count_common_splitters(std::span<const std::uint64_t> members, std::uint64_t begin,
                                     std::uint64_t end) {
  std::vector<SplitWindow> windows;
  windows.reserve(members.size());
  for (std::uint64_t m : members) windows.push_back(split_window(static_cast<unsigned>(std::popcount(m))));

  std::uint64_t count = 0;
  for (std::uint64_t a = begin; a < end; ++a) {
    bool ok = true;
    for (std::size_t j = 0; j < members.size() && ok; ++j) {
      ok = windows[j].contains(static_cast<unsigned>(std::popcount(a & members[j])));
    }
    count += ok ? 1 : 0;
  }
  return count;
}

std::optional<std::uint64_t> first_unsplit_range(std::span<const std::uint64_t> family, std::uint64_t begin,
                                                 std::uint64_t end) {
  for (std::uint64_t b = begin; b < end; ++b) {
    if (!split_by_any(family, b)) return b;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> first_unsplit_list(std::span<const std::uint64_t> family,
                                                std::span<const std::uint64_t> targets) {
  for (std::uint64_t b : targets) {
    if (!split_by_any(family, b)) return b;
  }
  return std::nullopt;
}

}  // namespace splitkit::kernels::scalar
