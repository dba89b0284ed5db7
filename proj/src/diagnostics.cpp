#include "polcum/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "polcum/errors.hpp"
#include "polcum/genfun.hpp"
#include "polcum/slater.hpp"

namespace polcum {

BinderResult binder_u4(double m2, double m4) {
  if (m2 <= 0.0)
    throw std::invalid_argument(
        "Binder cumulant needs M2 > 0 (degenerate distribution or invalid "
        "moment extraction)");
  BinderResult r;
  r.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  r.u4 = -r.excess_kurtosis / 3.0;
  return r;
}

std::vector<std::pair<int, double>> u4_vs_order(const CharSeq& cs,
                                                const std::vector<int>& orders) {
  std::vector<std::pair<int, double>> out;
  out.reserve(orders.size());
  for (int mu : orders) {
    const FddMoments m = fdd_moments(cs, mu);
    out.emplace_back(mu, binder_u4(m.m2, m.m4).u4);
  }
  return out;
}

FidelityPoint fidelity_susceptibility(
    const std::function<SlaterState(double)>& state_at, double parameter,
    double delta) {
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
  const SlaterState below = state_at(parameter - delta);
  const SlaterState above = state_at(parameter + delta);
  if (below.degenerate || above.degenerate)
    throw DegeneracyError("fidelity undefined at a degenerate ground state");

  FidelityPoint p;
  p.parameter = parameter;
  p.delta = delta;
  p.overlap_magnitude = std::abs(state_overlap(below, above));
  if (p.overlap_magnitude == 0.0) {
    p.divergent = true;
    p.chi = std::numeric_limits<double>::infinity();
    return p;
  }
  p.chi = -std::log(p.overlap_magnitude) / (2.0 * delta * delta);
  return p;
}

FidelityPoint fidelity_susceptibility(
    const std::function<ModelSpec(double)>& family, double parameter,
    double delta, int particles) {
  auto state_at = [&](double w) {
    return occupy_ground(eigensolve(build_model(family(w))), particles,
                         OccupationMode::Numeric);
  };
  return fidelity_susceptibility(state_at, parameter, delta);
}

}  // namespace polcum
