#pragma once

#include <complex>
#include <vector>

namespace polcum {

enum class CharSeqSource { Slater, Bloch, Analytic };

/// Discrete characteristic sequence Z_q, q = 0..q_max, of a periodic
/// total-position distribution on length scale `length` (sites times unit
/// lattice constant). Negative indices are defined by Hermitian symmetry,
/// Z_{-q} = conj(Z_q).
struct CharSeq {
  double length = 0.0;
  std::vector<std::complex<double>> values;
  CharSeqSource source = CharSeqSource::Analytic;

  int q_max() const { return static_cast<int>(values.size()) - 1; }

  /// Z_q for any |q| <= q_max, extending to negative q by conjugation.
  std::complex<double> at(int q) const;

  /// Enforces Z_0 = 1 (1e-12) and |Z_q| <= 1 + 1e-10. Throws
  /// std::invalid_argument otherwise.
  void validate() const;

  /// Z_0 = 1 and Z_q = 0 for q >= 1 (flat distribution).
  static CharSeq flat(double length, int q_max);

  static CharSeq analytic(double length, std::vector<std::complex<double>> values);
};

}  // namespace polcum
