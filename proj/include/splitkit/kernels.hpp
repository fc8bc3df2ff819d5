#pragma once

// Bitmask inner loops shared by the family checks and the splitter counters.
//
// Each kernel has a scalar reference in `kernels::scalar` and, on x86-64, an
// AVX2 variant in `kernels::avx2` that processes four 64-bit masks per step.
// The unqualified entry points dispatch to the backend chosen at startup
// (AVX2 when the CPU reports it). Setting SPLITKIT_KERNEL=scalar in the
// environment, or calling set_backend(), forces the reference path.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace splitkit::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend backend);
bool backend_available(Backend backend);
Backend active_backend();
/// Throws ContractViolation if the backend is not available on this CPU.
void set_backend(Backend backend);

/// Number of masks A in [begin, end) that split every member.
std::uint64_t count_common_splitters(std::span<const std::uint64_t> members, std::uint64_t begin,
                                     std::uint64_t end);

/// Least B in [begin, end) split by no member of `family`, if any.
std::optional<std::uint64_t> first_unsplit_range(std::span<const std::uint64_t> family, std::uint64_t begin,
                                                 std::uint64_t end);

/// First entry of `targets` split by no member of `family`, if any.
std::optional<std::uint64_t> first_unsplit_list(std::span<const std::uint64_t> family,
                                                std::span<const std::uint64_t> targets);

namespace scalar {
std::uint64_t count_common_splitters(std::span<const std::uint64_t> members, std::uint64_t begin,
                                     std::uint64_t end);
std::optional<std::uint64_t> first_unsplit_range(std::span<const std::uint64_t> family, std::uint64_t begin,
                                                 std::uint64_t end);
std::optional<std::uint64_t> first_unsplit_list(std::span<const std::uint64_t> family,
                                                std::span<const std::uint64_t> targets);
}  // namespace scalar

namespace avx2 {
/// Compiled in only on x86-64; callers must check backend_available(Backend::Avx2).
bool compiled();
std::uint64_t count_common_splitters(std::span<const std::uint64_t> members, std::uint64_t begin,
                                     std::uint64_t end);
std::optional<std::uint64_t> first_unsplit_range(std::span<const std::uint64_t> family, std::uint64_t begin,
                                                 std::uint64_t end);
std::optional<std::uint64_t> first_unsplit_list(std::span<const std::uint64_t> family,
                                                std::span<const std::uint64_t> targets);
}  // namespace avx2

}  // namespace splitkit::kernels
