#include <atomic>
#include <cstdlib>
#include <string>

#include "splitkit/error.hpp"
#include "splitkit/kernels.hpp"

namespace splitkit::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend detect() {
  if (const char* forced = std::getenv("SPLITKIT_KERNEL"); forced != nullptr && std::string(forced) == "scalar") {
    return Backend::Scalar;
  }
  return backend_available(Backend::Avx2) ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& selected() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend backend) { return backend == Backend::Avx2 ? "avx2" : "scalar"; }

bool backend_available(Backend backend) {
  if (backend == Backend::Scalar) return true;
  static const bool avx2 = avx2::compiled() && cpu_has_avx2();
  return avx2;
}

Backend active_backend() { return selected().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  if (!backend_available(backend)) {
    throw ContractViolation("kernel backend " + std::string(backend_name(backend)) + " is not available");
  }
  selected().store(backend, std::memory_order_relaxed);
}

std::uint64_t count_common_splitters(std::span<const std::uint64_t> members, std::uint64_t begin,
                                     std::uint64_t end) {
  return active_backend() == Backend::Avx2 ? avx2::count_common_splitters(members, begin, end)
                                           : scalar::count_common_splitters(members, begin, end);
}

std::optional<std::uint64_t> first_unsplit_range(std::span<const std::uint64_t> family, std::uint64_t begin,
                                                 std::uint64_t end) {
  return active_backend() == Backend::Avx2 ? avx2::first_unsplit_range(family, begin, end)
                                           : scalar::first_unsplit_range(family, begin, end);
}

std::optional<std::uint64_t> first_unsplit_list(std::span<const std::uint64_t> family,
                                                std::span<const std::uint64_t> targets) {
  return active_backend() == Backend::Avx2 ? avx2::first_unsplit_list(family, targets)
                                           : scalar::first_unsplit_list(family, targets);
}

}  // namespace splitkit::kernels
