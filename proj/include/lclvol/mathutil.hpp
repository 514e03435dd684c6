#pragma once

#include <cstdint>

namespace lclvol {

// Smallest r with r^k >= n (n >= 1, k >= 1).
std::uint64_t ceil_root(std::uint64_t n, int k);

// ⌈log₂ n⌉ for n >= 1; 0 for n <= 1.
int ceil_log2(std::uint64_t n);

}  // namespace lclvol
