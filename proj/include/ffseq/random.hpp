#pragma once

#include <cstdint>
#include <random>

namespace ffseq {

using Rng = std::mt19937_64;

/// Uniform integer in [0, n), by rejection on raw engine output so that the
/// stream is identical across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

}  // namespace ffseq
