#pragma once

#include <cstdint>
#include <vector>

namespace polcum {

/// F_1 = F_2 = 1, F_3 = 2, ... in exact 64-bit arithmetic. Indices above 92
/// would overflow and are rejected.
std::int64_t fibonacci(int index);

/// Smallest index >= 2 with fibonacci(index) == value; throws
/// std::invalid_argument when value is not a Fibonacci number.
int fibonacci_index(std::int64_t value);

/// Unique decomposition of n >= 1 into non-consecutive Fibonacci numbers
/// (greedy largest-first; indices start at 2 so the value 1 appears once).
struct ZeckendorfDecomposition {
  std::int64_t n = 0;
  std::vector<int> indices;          // strictly decreasing, gaps >= 2
  std::vector<std::int64_t> values;  // fibonacci(indices[i])
  int term_count() const { return static_cast<int>(indices.size()); }
};

ZeckendorfDecomposition zeckendorf(std::int64_t n);

/// Quasiperiodic-chain filling classes: fillings whose decomposition contains
/// only large Fibonacci numbers approximate their irrational limit well and
/// stay localized for any finite potential; a small term (value <= threshold)
/// spoils the approximation and restores the single-particle transition near
/// W/t = 2.
enum class FillingClass { LocalizedForAllW, TransitionNearWc2 };

struct FillingTerm {
  int index = 0;
  std::int64_t value = 0;
  double ratio = 0.0;             // value / sites
  double irrational_limit = 0.0;  // lim_s F_{index+s} / F_{n+s}
};

struct FillingReport {
  FillingClass classification = FillingClass::LocalizedForAllW;
  ZeckendorfDecomposition decomposition;
  std::vector<FillingTerm> terms;
  double limit_estimate = 0.0;  // sum of per-term irrational limits
};

/// Requires 1 <= particles < sites and sites a Fibonacci number.
FillingReport classify_filling(std::int64_t particles, std::int64_t sites,
                               std::int64_t small_value_threshold = 2);

}  // namespace polcum
