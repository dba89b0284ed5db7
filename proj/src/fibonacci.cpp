#include "polcum/fibonacci.hpp"

#include <stdexcept>
#include <string>

namespace polcum {

namespace {

constexpr int kMaxIndex = 92;  // F_92 is the largest Fibonacci number in int64

}  // namespace

std::int64_t fibonacci(int index) {
  if (index < 1) throw std::invalid_argument("Fibonacci index must be >= 1");
  if (index > kMaxIndex)
    throw std::invalid_argument("Fibonacci index " + std::to_string(index) +
                                " overflows 64-bit arithmetic (max 92)");
  std::int64_t a = 1, b = 1;  // F_1, F_2
  for (int i = 3; i <= index; ++i) {
    const std::int64_t c = a + b;
    a = b;
    b = c;
  }
  return b;
}

int fibonacci_index(std::int64_t value) {
  if (value >= 1)
    for (int i = 2; i <= kMaxIndex; ++i) {
      const std::int64_t f = fibonacci(i);
      if (f == value) return i;
      if (f > value) break;
    }
  throw std::invalid_argument(std::to_string(value) + " is not a Fibonacci number");
}

ZeckendorfDecomposition zeckendorf(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("Zeckendorf decomposition needs n >= 1");
  ZeckendorfDecomposition d;
  d.n = n;
  std::int64_t remaining = n;
  int index = kMaxIndex;
  while (remaining > 0) {
    while (fibonacci(index) > remaining) --index;
    d.indices.push_back(index);
    d.values.push_back(fibonacci(index));
    remaining -= fibonacci(index);
    // greedy remainder is below F_{index-1}, so the gap >= 2 is automatic
    index -= 2;
  }
  return d;
}

FillingReport classify_filling(std::int64_t particles, std::int64_t sites,
                               std::int64_t small_value_threshold) {
  if (particles < 1 || particles >= sites)
    throw std::invalid_argument("filling needs 1 <= particles < sites");
  const int n = fibonacci_index(sites);

  FillingReport report;
  report.decomposition = zeckendorf(particles);

  // Shift both indices up together until the denominator saturates the
  // 64-bit range; the ratio then approximates its irrational limit.
  const int shift = kMaxIndex - 2 - n;
  bool has_small_term = false;
  for (std::size_t i = 0; i < report.decomposition.indices.size(); ++i) {
    FillingTerm term;
    term.index = report.decomposition.indices[i];
    term.value = report.decomposition.values[i];
    term.ratio = static_cast<double>(term.value) / static_cast<double>(sites);
    term.irrational_limit =
        static_cast<double>(fibonacci(term.index + shift)) /
        static_cast<double>(fibonacci(n + shift));
    report.terms.push_back(term);
    report.limit_estimate += term.irrational_limit;
    if (term.value <= small_value_threshold) has_small_term = true;
  }
  report.classification = has_small_term ? FillingClass::TransitionNearWc2
                                         : FillingClass::LocalizedForAllW;
  return report;
}

}  // namespace polcum
