#include "lclvol/mathutil.hpp"

#include <cmath>

namespace lclvol {

namespace {

// r^k >= n without overflow.
bool pow_at_least(std::uint64_t r, int k, std::uint64_t n) {
  std::uint64_t acc = 1;
  for (int i = 0; i < k; ++i) {
    if (acc >= (n + r - 1) / r) return true;  // acc * r >= n
    acc *= r;
  }
  return acc >= n;
}

}  // namespace

std::uint64_t ceil_root(std::uint64_t n, int k) {
  if (n <= 1 || k <= 1) return n == 0 ? 0 : n;
  auto guess = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  std::uint64_t r = guess > 2 ? guess - 2 : 1;
  while (!pow_at_least(r, k, n)) ++r;
  return r;
}

int ceil_log2(std::uint64_t n) {
  int d = 0;
  while (d < 64 && (std::uint64_t{1} << d) < n) ++d;
  return d;
}

}  // namespace lclvol
