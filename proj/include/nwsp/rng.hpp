#pragma once

// Deterministic sampling helpers on std::mt19937_64. Hand-rolled bounded
// draws so streams do not depend on the standard library's distribution
// internals, and so rational probabilities like rho/khat are exact.

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace nwsp {

using Rng = std::mt19937_64;

// Round counts for the sampling loops. ceil(ln n) — never an exact integer
// boundary for integer n >= 2, so the float ceil is safe. ceil(lg n) is exact
// via bit_width.
inline int ceil_ln(std::int64_t n) {
  return n <= 1 ? 0 : static_cast<int>(std::ceil(std::log(static_cast<double>(n))));
}

inline int ceil_lg(std::int64_t n) {
  return n <= 1 ? 0 : static_cast<int>(std::bit_width(static_cast<std::uint64_t>(n - 1)));
}

// Uniform in [0, bound) by rejection; bound >= 1.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Uniform integer in [lo, hi], inclusive.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(span == 0 ? rng() : uniform_below(rng, span));
}

// Bernoulli with exact probability num/den.
inline bool bernoulli_ratio(Rng& rng, std::uint64_t num, std::uint64_t den) {
  if (den == 0 || num > den) throw std::invalid_argument("bernoulli_ratio: need num <= den, den > 0");
  if (num == den) return true;
  return uniform_below(rng, den) < num;
}

// k distinct items drawn uniformly from pool, via partial Fisher-Yates.
// Order of the result is the draw order.
template <typename T>
std::vector<T> sample_without_replacement(Rng& rng, std::vector<T> pool, std::size_t k) {
  if (k > pool.size()) throw std::invalid_argument("sample_without_replacement: k > pool size");
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace nwsp
