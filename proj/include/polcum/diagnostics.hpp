#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "polcum/char_seq.hpp"
#include "polcum/lattice_models.hpp"

namespace polcum {

/// Binder cumulant of a centered distribution, U4 = 1 - M4 / (3 M2^2),
/// together with the excess kurtosis M4/M2^2 - 3 (U4 = -kurtosis/3).
struct BinderResult {
  double u4 = 0.0;
  double excess_kurtosis = 0.0;
};

/// Throws std::invalid_argument when m2 <= 0 (degenerate distribution or
/// invalid moment extraction).
BinderResult binder_u4(double m2, double m4);

/// U4 from FDD moments at each requested stencil order.
std::vector<std::pair<int, double>> u4_vs_order(const CharSeq& cs,
                                                const std::vector<int>& orders);

/// One fidelity-susceptibility sample: the second-order drop rate of the
/// ground-state overlap under a parameter change, estimated by the symmetric
/// finite difference chi = -ln|<Psi(w-delta)|Psi(w+delta)>| / (2 delta^2).
/// The magnitude is taken before the logarithm; eigenvector phases are
/// arbitrary and Re ln z = ln|z| regardless.
struct FidelityPoint {
  double parameter = 0.0;
  double delta = 0.0;
  double chi = 0.0;
  double overlap_magnitude = 0.0;
  bool divergent = false;  // overlap underflowed to zero
};

/// Generic form: `state_at` produces the ground SlaterState at a parameter
/// value. Throws DegeneracyError when either endpoint state is degenerate.
FidelityPoint fidelity_susceptibility(
    const std::function<SlaterState(double)>& state_at, double parameter,
    double delta);

/// Model-family form: diagonalizes family(w -+ delta) and occupies the lowest
/// `particles` orbitals at both endpoints.
FidelityPoint fidelity_susceptibility(
    const std::function<ModelSpec(double)>& family, double parameter,
    double delta, int particles);

}  // namespace polcum
