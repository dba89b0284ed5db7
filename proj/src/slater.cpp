#include "polcum/slater.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polcum/errors.hpp"

namespace polcum {

namespace {

// det(a) with the log-magnitude accumulated separately from the phase, so
// determinants of order e^{-cN} neither overflow intermediates nor lose the
// phase. Returns exact zero when a pivot vanishes.
std::complex<double> determinant_scaled(Eigen::MatrixXcd a) {
  const Eigen::Index n = a.rows();
  if (n == 0) return {1.0, 0.0};
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(std::move(a));
  double log_magnitude = 0.0;
  std::complex<double> phase =
      static_cast<double>(lu.permutationP().determinant());
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> d = lu.matrixLU()(i, i);
    const double m = std::abs(d);
    if (m == 0.0) return {0.0, 0.0};
    log_magnitude += std::log(m);
    phase *= d / m;
  }
  return std::exp(log_magnitude) * phase;
}

void check_terms(const SlaterState& state) {
  if (state.terms.empty() || state.terms.size() > 2)
    throw std::invalid_argument("state needs one or two determinant terms");
  for (const auto& term : state.terms)
    if (term.orbitals.rows() != state.sites || term.orbitals.cols() != state.particles)
      throw std::invalid_argument(
          "superposition terms disagree on site or particle count");
}

Eigen::VectorXcd twist_phases(int sites, int q) {
  Eigen::VectorXcd ph(sites);
  for (int x = 0; x < sites; ++x) {
    const double arg = 2.0 * std::numbers::pi * q * x / sites;
    ph(x) = {std::cos(arg), std::sin(arg)};
  }
  return ph;
}

}  // namespace

std::complex<double> char_value(const SlaterState& state, int q) {
  check_terms(state);
  const Eigen::VectorXcd ph = twist_phases(state.sites, q);
  std::complex<double> z = 0.0;
  for (const auto& bra : state.terms)
    for (const auto& ket : state.terms) {
      const Eigen::MatrixXcd twisted = ph.asDiagonal() * ket.orbitals;
      const Eigen::MatrixXcd overlap = bra.orbitals.adjoint() * twisted;
      z += std::conj(bra.coefficient) * ket.coefficient * determinant_scaled(overlap);
    }
  return z;
}

CharSeq char_seq(const SlaterState& state, int q_max) {
  if (q_max < 1) throw std::invalid_argument("q_max must be at least 1");
  CharSeq cs;
  cs.length = state.sites;
  cs.source = CharSeqSource::Slater;
  cs.values.reserve(static_cast<std::size_t>(q_max) + 1);
  for (int q = 0; q <= q_max; ++q) cs.values.push_back(char_value(state, q));
  cs.validate();
  return cs;
}

RestaPolarization resta_polarization(const CharSeq& cs, double threshold) {
  if (cs.q_max() < 1) throw std::invalid_argument("need Z_1");
  const std::complex<double> z1 = cs.values[1];
  if (std::abs(z1) <= threshold)
    throw UndefinedQuantityError(
        "polarization undefined: |Z_1| below threshold (metallic or flat "
        "distribution)");
  RestaPolarization out;
  out.phase = std::arg(z1);
  if (out.phase <= -std::numbers::pi) out.phase = std::numbers::pi;
  out.position = cs.length * out.phase / (2.0 * std::numbers::pi);
  return out;
}

std::complex<double> state_overlap(const SlaterState& a, const SlaterState& b) {
  check_terms(a);
  check_terms(b);
  if (a.sites != b.sites || a.particles != b.particles)
    throw std::invalid_argument("states disagree on site or particle count");
  std::complex<double> result = 0.0;
  for (const auto& bra : a.terms)
    for (const auto& ket : b.terms) {
      const Eigen::MatrixXcd overlap = bra.orbitals.adjoint() * ket.orbitals;
      result += std::conj(bra.coefficient) * ket.coefficient *
                determinant_scaled(overlap);
    }
  return result;
}

}  // namespace polcum
