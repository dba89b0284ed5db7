#pragma once

#include <complex>

#include "polcum/char_seq.hpp"
#include "polcum/lattice_models.hpp"

namespace polcum {

/// Single twist-operator expectation Z_q = <Psi| exp(i 2 pi q X / L) |Psi>
/// for any integer q. Each determinant pair contributes
/// conj(c_r) c_s det( Phi_r^dagger diag(e^{i 2 pi q x / L}) Phi_s ),
/// evaluated through a pivoted LU with the log-magnitude accumulated
/// separately from the phase so |Z_q| ~ e^{-cN} stays representable.
std::complex<double> char_value(const SlaterState& state, int q);

/// Z_q for q = 0..q_max.
CharSeq char_seq(const SlaterState& state, int q_max);

/// Single-point Berry phase of Z_1 and the position expectation it encodes.
/// Both carry the usual modulo-L (surface-charge) indeterminacy: `phase` is
/// reported on the principal branch (-pi, pi] and `position` on
/// (-L/2, L/2]; any shift by a whole period is equally valid.
struct RestaPolarization {
  double phase = 0.0;     // principal branch (-pi, pi]
  double position = 0.0;  // <X> = L phase / 2 pi
};

/// Throws UndefinedQuantityError when |Z_1| <= threshold (metallic or flat
/// distribution; the phase carries no information there).
RestaPolarization resta_polarization(const CharSeq& cs, double threshold = 1e-8);

/// Determinant overlap <a|b>, summed over superposition term pairs.
std::complex<double> state_overlap(const SlaterState& a, const SlaterState& b);

}  // namespace polcum
