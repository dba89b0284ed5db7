#include "polcum/genfun.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace polcum {

namespace {

Rational integer_power(std::int64_t base, int exponent) {
  Rational r(1);
  for (int i = 0; i < exponent; ++i) r *= Rational(base);
  return r;
}

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= Rational(i);
  return r;
}

// Exact solve of the monomial-exactness system on the symmetric window
// -p..p: sum_j c_j j^m = n! delta_{mn} for m = 0..2p.
std::vector<Rational> solve_stencil(int n, int p) {
  const int size = 2 * p + 1;
  std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size));
  std::vector<Rational> rhs(size, Rational(0));
  for (int m = 0; m < size; ++m)
    for (int col = 0; col < size; ++col)
      a[m][col] = integer_power(col - p, m);
  rhs[n] = factorial(n);

  for (int k = 0; k < size; ++k) {
    int pivot = k;
    while (pivot < size && a[pivot][k] == 0) ++pivot;
    if (pivot == size) throw std::logic_error("singular stencil system");
    std::swap(a[k], a[pivot]);
    std::swap(rhs[k], rhs[pivot]);
    for (int r = k + 1; r < size; ++r) {
      if (a[r][k] == 0) continue;
      const Rational factor = a[r][k] / a[k][k];
      for (int c = k; c < size; ++c) a[r][c] -= factor * a[k][c];
      rhs[r] -= factor * rhs[k];
    }
  }
  std::vector<Rational> x(size, Rational(0));
  for (int k = size - 1; k >= 0; --k) {
    Rational acc = rhs[k];
    for (int c = k + 1; c < size; ++c) acc -= a[k][c] * x[c];
    x[k] = acc / a[k][k];
  }
  return x;
}

constexpr int kMaxRadius = 64;

}  // namespace

int stencil_radius(int derivative, int accuracy) {
  return accuracy + (derivative + 1) / 2 - 1;
}

const StencilTable& stencil(int derivative, int accuracy) {
  if (derivative < 1 || derivative > 4)
    throw std::invalid_argument("derivative order must be in 1..4");
  if (accuracy < 1) throw std::invalid_argument("accuracy order must be >= 1");
  const int p = stencil_radius(derivative, accuracy);
  if (p > kMaxRadius)
    throw std::invalid_argument("stencil window of radius " + std::to_string(p) +
                                " rejected (accuracy order too large)");

  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<StencilTable>> memo;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = memo[{derivative, accuracy}];
  if (!slot) {
    auto table = std::make_unique<StencilTable>();
    table->derivative = derivative;
    table->accuracy = accuracy;
    table->exact = solve_stencil(derivative, p);
    table->offsets.resize(2 * p + 1);
    table->coeffs.resize(2 * p + 1);
    for (int i = 0; i <= 2 * p; ++i) {
      table->offsets[i] = i - p;
      table->coeffs[i] = table->exact[i].convert_to<double>();
    }
    slot = std::move(table);
  }
  return *slot;
}

namespace {

// Folded stencil sum over magnitudes, using |Z_-q| = |Z_q|. Even derivative
// orders only; odd orders vanish identically on magnitudes.
double fold_magnitudes(const StencilTable& st, const CharSeq& cs) {
  const int p = st.radius();
  double sum = st.coeffs[p] * std::abs(cs.values[0]);
  for (int q = 1; q <= p; ++q)
    sum += 2.0 * st.coeffs[p + q] * std::abs(cs.values[q]);
  return sum;
}

std::string diverging_reason(int q) {
  return "|Z_" + std::to_string(q) +
         "| at or below the log threshold; logarithmic cumulant diverges "
         "(metallic or flat distribution)";
}

}  // namespace

FddMoments fdd_moments(const CharSeq& cs, int accuracy) {
  const int need = stencil_radius(4, accuracy);
  if (cs.q_max() < need)
    throw std::invalid_argument("characteristic sequence too short: need q_max >= " +
                                std::to_string(need));
  const double f = cs.length / (2.0 * std::numbers::pi);
  FddMoments m;
  m.m2 = -f * f * fold_magnitudes(stencil(2, accuracy), cs);
  m.m4 = f * f * f * f * fold_magnitudes(stencil(4, accuracy), cs);
  return m;
}

std::array<Flagged, 4> reduced_cumulants(const CharSeq& cs, int accuracy,
                                         double log_threshold) {
  const int need = stencil_radius(4, accuracy);
  if (cs.q_max() < need)
    throw std::invalid_argument("characteristic sequence too short: need q_max >= " +
                                std::to_string(need));

  std::vector<std::complex<double>> logz(need + 1);
  std::vector<int> bad(need + 1, 0);
  for (int q = 0; q <= need; ++q) {
    const double mag = std::abs(cs.values[q]);
    if (mag <= log_threshold) {
      bad[q] = 1;
      continue;
    }
    logz[q] = std::log(cs.values[q]);  // principal branch
  }

  std::array<Flagged, 4> out;
  for (int n = 1; n <= 4; ++n) {
    const auto& st = stencil(n, accuracy);
    const int p = st.radius();
    Flagged entry;
    bool valid = true;
    for (int q = 0; q <= p && valid; ++q)
      if (bad[q]) {
        entry = Flagged::invalid(diverging_reason(q));
        valid = false;
      }
    if (!valid) {
      out[n - 1] = std::move(entry);
      continue;
    }
    // Fold with Log Z_-q = conj(Log Z_q): odd orders keep 2i * Im parts,
    // even orders keep 2 * Re parts plus the central term.
    double value = 0.0;
    if (n % 2 == 1) {
      double s = 0.0;
      for (int q = 1; q <= p; ++q) s += st.coeffs[p + q] * logz[q].imag();
      value = (n == 1) ? 2.0 * s : -2.0 * s;  // (1/i^n) * 2i s
    } else {
      double s = st.coeffs[p] * logz[0].real();
      for (int q = 1; q <= p; ++q) s += 2.0 * st.coeffs[p + q] * logz[q].real();
      value = (n == 2) ? -s : s;  // (1/i^n) * s
    }
    out[n - 1] = Flagged::ok(value);
  }
  return out;
}

namespace {

Flagged flagged_u4(const Flagged& m2, const Flagged& m4) {
  if (!m2.valid || !m4.valid)
    return Flagged::invalid("moments unavailable");
  if (m2.value <= 0.0)
    return Flagged::invalid("nonpositive second moment");
  return Flagged::ok(1.0 - m4.value / (3.0 * m2.value * m2.value));
}

}  // namespace

CumulantReport fdld_cumulants(const CharSeq& cs, int accuracy,
                              double log_threshold) {
  CumulantReport report;
  report.scheme = Scheme::Fdld;
  report.accuracy = accuracy;
  report.length = cs.length;

  report.reduced = reduced_cumulants(cs, accuracy, log_threshold);
  const double f = cs.length / (2.0 * std::numbers::pi);
  double factor = 1.0;
  for (int n = 1; n <= 4; ++n) {
    factor *= f;
    const Flagged& r = report.reduced[n - 1];
    report.cumulants[n - 1] =
        r.valid ? Flagged::ok(factor * r.value) : Flagged::invalid(r.reason);
  }

  report.m2 = Flagged::invalid("moments are not extracted by the logarithmic scheme");
  report.m4 = report.m2;

  const Flagged& c2 = report.cumulants[1];
  const Flagged& c3 = report.cumulants[2];
  const Flagged& c4 = report.cumulants[3];
  if (!c2.valid) {
    report.skewness = Flagged::invalid("second cumulant unavailable");
    report.excess_kurtosis = report.skewness;
    report.u4 = report.skewness;
  } else if (c2.value <= 0.0) {
    report.skewness = Flagged::invalid("nonpositive variance");
    report.excess_kurtosis = report.skewness;
    report.u4 = report.skewness;
  } else {
    report.skewness =
        c3.valid ? Flagged::ok(c3.value / std::pow(c2.value, 1.5))
                 : Flagged::invalid(c3.reason);
    report.excess_kurtosis =
        c4.valid ? Flagged::ok(c4.value / (c2.value * c2.value))
                 : Flagged::invalid(c4.reason);
    report.u4 = report.excess_kurtosis.valid
                    ? Flagged::ok(-report.excess_kurtosis.value / 3.0)
                    : Flagged::invalid(report.excess_kurtosis.reason);
  }
  return report;
}

CumulantReport fdd_report(const CharSeq& cs, int accuracy) {
  CumulantReport report;
  report.scheme = Scheme::Fdd;
  report.accuracy = accuracy;
  report.length = cs.length;

  const FddMoments m = fdd_moments(cs, accuracy);
  report.m2 = Flagged::ok(m.m2);
  report.m4 = Flagged::ok(m.m4);
  const auto none = Flagged::invalid("cumulants are not extracted by the magnitude scheme");
  report.cumulants = {none, none, none, none};
  report.reduced = {none, none, none, none};

  report.u4 = flagged_u4(report.m2, report.m4);
  // Magnitude folding centers the distribution symmetrically; odd moments
  // vanish identically.
  report.skewness = Flagged::ok(0.0);
  report.excess_kurtosis =
      report.u4.valid ? Flagged::ok(m.m4 / (m.m2 * m.m2) - 3.0)
                      : Flagged::invalid(report.u4.reason);
  return report;
}

double reference_kurtosis(ReferenceDistribution kind) {
  switch (kind) {
    case ReferenceDistribution::Flat:
      return -1.2;
    case ReferenceDistribution::RaisedCosine: {
      const double pi2 = std::numbers::pi * std::numbers::pi;
      return 1.2 * (90.0 - pi2 * pi2) / ((pi2 - 6.0) * (pi2 - 6.0));
    }
    case ReferenceDistribution::Gaussian:
      return 0.0;
  }
  throw std::invalid_argument("unknown reference distribution");
}

}  // namespace polcum
