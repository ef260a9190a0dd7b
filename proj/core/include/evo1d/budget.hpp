#pragma once

#include <cstdint>

namespace evo1d {

/// Caps for the exhaustive searches. All limits are inclusive.
struct Budget {
  /// Largest field order for which elements may be enumerated.
  std::uint64_t elements = 1024;
  /// Largest field order for group enumeration contexts.
  std::uint64_t group_field = 16;
  /// Largest candidate count q^(n*n) for matrix searches (orthogonal
  /// groups, brute-force isomorphism) and q^n for vector searches.
  std::uint64_t matrix_search = std::uint64_t{1} << 24;
};

/// q^e, saturating at UINT64_MAX.
constexpr std::uint64_t saturating_pow(std::uint64_t q, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (q != 0 && r > UINT64_MAX / q) return UINT64_MAX;
    r *= q;
  }
  return r;
}

}  // namespace evo1d
