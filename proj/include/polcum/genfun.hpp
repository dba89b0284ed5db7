#pragma once

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <string>
#include <vector>

#include "polcum/char_seq.hpp"

namespace polcum {

using Rational = boost::multiprecision::cpp_rational;

/// Central finite-difference stencil for the n-th derivative, exact on
/// monomials q^p for p <= n + 2*accuracy - 1, i.e. error O(h^{2 accuracy}).
/// Coefficients are generated in exact rational arithmetic on the minimal
/// symmetric window and rounded to double once.
struct StencilTable {
  int derivative = 0;  // n
  int accuracy = 0;    // mu
  std::vector<int> offsets;     // -radius .. +radius
  std::vector<Rational> exact;  // one per offset
  std::vector<double> coeffs;   // exact, rounded

  int radius() const { return static_cast<int>(offsets.size()) / 2; }
};

/// Window radius mu + ceil(n/2) - 1 of the (n, mu) stencil.
int stencil_radius(int derivative, int accuracy);

/// Cached generator; derivative in 1..4, accuracy >= 1. Throws
/// std::invalid_argument for out-of-range orders or absurd window sizes.
const StencilTable& stencil(int derivative, int accuracy);

/// A value that may be individually invalid inside a batch report; invalid
/// entries carry the triggering condition instead of throwing.
struct Flagged {
  double value = std::numeric_limits<double>::quiet_NaN();
  bool valid = false;
  std::string reason;

  static Flagged ok(double v) { return {v, true, {}}; }
  static Flagged invalid(std::string why) {
    return {std::numeric_limits<double>::quiet_NaN(), false, std::move(why)};
  }
};

enum class Scheme { Fdd, Fdld };

/// Centered moments from stencils applied to the magnitudes |Z_q|
/// (taking magnitudes centers the distribution). Valid on both sides of a
/// metal-insulator transition. Throws std::invalid_argument when q_max is
/// too small for the order-(4, accuracy) window.
struct FddMoments {
  double m2 = 0.0;
  double m4 = 0.0;
};

FddMoments fdd_moments(const CharSeq& cs, int accuracy);

/// Moment/cumulant summary for one characteristic sequence at one stencil
/// order. Entries a scheme does not produce, or that diverge, are flagged.
struct CumulantReport {
  Scheme scheme = Scheme::Fdd;
  int accuracy = 1;
  double length = 0.0;
  Flagged m2, m4;                    // centered moments
  std::array<Flagged, 4> cumulants;  // C_1..C_4
  std::array<Flagged, 4> reduced;    // c_1..c_4 (dimensionless)
  Flagged u4;
  Flagged skewness;
  Flagged excess_kurtosis;
};

/// Cumulants from stencils applied to Log Z_q on the principal branch
/// (Resta polarization and Resta-Sorella variance at accuracy 1). Any
/// |Z_q| <= log_threshold in a window marks the affected entries invalid:
/// the logarithmic terms diverge for metallic / flat distributions.
CumulantReport fdld_cumulants(const CharSeq& cs, int accuracy,
                              double log_threshold = 1e-12);

/// Dimensionless reduced cumulants (no L/2pi factors); the first one
/// estimates the open-path geometric phase of the underlying band.
std::array<Flagged, 4> reduced_cumulants(const CharSeq& cs, int accuracy,
                                         double log_threshold = 1e-12);

/// FDD-side report: moments, Binder U4 and excess kurtosis filled.
CumulantReport fdd_report(const CharSeq& cs, int accuracy);

enum class ReferenceDistribution { Flat, RaisedCosine, Gaussian };

/// Closed-form excess kurtosis of common reference distributions.
double reference_kurtosis(ReferenceDistribution kind);

}  // namespace polcum
