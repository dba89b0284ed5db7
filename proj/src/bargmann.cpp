#include "polcum/bargmann.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "polcum/errors.hpp"
#include "polcum/genfun.hpp"

namespace polcum {

namespace {

void check_path(const StatePath& path) {
  const int m = path.size();
  if (m < 2) throw std::invalid_argument("path needs at least two states");
  const Eigen::Index dim = path.states.front().size();
  for (const auto& s : path.states) {
    if (s.size() != dim)
      throw std::invalid_argument("path states disagree on dimension");
    if (std::abs(s.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("path states must be normalized");
  }
  if (path.closure == PathClosure::SymmetryClosed) {
    if (path.symmetry_phase.size() != dim)
      throw std::invalid_argument("symmetry action must match the state dimension");
    for (Eigen::Index i = 0; i < dim; ++i)
      if (std::abs(std::abs(path.symmetry_phase(i)) - 1.0) > 1e-10)
        throw std::invalid_argument("symmetry action must be a diagonal unitary");
  }
}

// Ket at logical index `idx` in [0, 2M): wrapped kets pick up the closure
// rule (plain wrap for cyclic paths, the symmetry action otherwise).
Eigen::VectorXcd path_ket(const StatePath& path, int idx) {
  const int m = path.size();
  if (idx < m) return path.states[idx];
  if (path.closure == PathClosure::Cyclic) return path.states[idx - m];
  return path.symmetry_phase.cwiseProduct(path.states[idx - m]);
}

}  // namespace

std::complex<double> gamma_q(const StatePath& path, int shift) {
  check_path(path);
  const int m = path.size();
  if (shift < 0 || shift >= m)
    throw std::invalid_argument("shift index must satisfy 0 <= q < M");
  std::complex<double> product = 1.0;
  for (int j = 0; j < m; ++j)
    product *= path.states[j].dot(path_ket(path, j + shift));
  return product;
}

double discrete_berry_phase(const StatePath& path, double zero_link_threshold) {
  check_path(path);
  const int m = path.size();
  std::complex<double> product = 1.0;
  for (int j = 0; j < m; ++j) {
    const std::complex<double> link = path.states[j].dot(path_ket(path, j + 1));
    if (std::abs(link) <= zero_link_threshold)
      throw DegeneracyError(
          "degeneracy point crossed between path states " + std::to_string(j) +
          " and " + std::to_string(j + 1) +
          "; geometric phase undefined (use moment-based diagnostics)");
    product *= link;
  }
  double phase = std::arg(product);
  if (phase <= -std::numbers::pi) phase = std::numbers::pi;
  return phase;
}

double BlochBand::delta_k() const {
  return 2.0 * std::numbers::pi / (kCellLength * n_cells);
}

BlochBand ssh_lower_band(double j_odd, double j_even, int n_cells) {
  if (n_cells < 2) throw std::invalid_argument("need at least two cells");
  if (j_odd == 0.0 && j_even == 0.0)
    throw std::invalid_argument("both hoppings vanish; band undefined");

  BlochBand band;
  band.j_odd = j_odd;
  band.j_even = j_even;
  band.n_cells = n_cells;
  band.u.resize(2, n_cells);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int m = 0; m < n_cells; ++m) {
    const double k = 2.0 * std::numbers::pi * m / (BlochBand::kCellLength * n_cells);
    const std::complex<double> h =
        -(j_odd * std::complex<double>(std::cos(k), std::sin(k)) +
          j_even * std::complex<double>(std::cos(k), -std::sin(k)));
    const double mag = std::abs(h);
    if (mag == 0.0) {
      // exact gap closure on a grid point; either sublattice choice leaves a
      // zero link next door
      band.u(0, m) = inv_sqrt2;
      band.u(1, m) = -inv_sqrt2;
    } else {
      band.u(0, m) = inv_sqrt2;
      band.u(1, m) = -std::conj(h) / mag * inv_sqrt2;
    }
  }
  return band;
}

namespace {

// Wrap phase e^{-i 2 pi x / l} on the basis offsets x = -1/2, +1/2.
const Eigen::Vector2cd& bloch_wrap_phase() {
  static const Eigen::Vector2cd s =
      (Eigen::Vector2cd() << std::complex<double>(0.0, 1.0),
       std::complex<double>(0.0, -1.0))
          .finished();
  return s;
}

std::complex<double> bloch_link(const BlochBand& band, int from, int shift) {
  const int to = from + shift;
  if (to < band.n_cells) return band.u.col(from).dot(band.u.col(to));
  const Eigen::Vector2cd wrapped =
      bloch_wrap_phase().cwiseProduct(band.u.col(to - band.n_cells));
  return band.u.col(from).dot(wrapped);
}

}  // namespace

CharSeq bloch_char_seq(const BlochBand& band, int q_max) {
  if (q_max < 1 || q_max >= band.n_cells)
    throw std::invalid_argument("need 1 <= q_max < n_cells");
  CharSeq cs;
  cs.length = band.length();
  cs.source = CharSeqSource::Bloch;
  cs.values.reserve(static_cast<std::size_t>(q_max) + 1);
  for (int q = 0; q <= q_max; ++q) {
    std::complex<double> z = 1.0;
    for (int m = 0; m < band.n_cells; ++m) z *= bloch_link(band, m, q);
    cs.values.push_back(z);
  }
  cs.validate();
  return cs;
}

std::vector<double> swm_discrete_cumulants(const BlochBand& band, int n_max,
                                           int accuracy, double link_threshold) {
  if (n_max < 1 || n_max > 4)
    throw std::invalid_argument("cumulant order must be in 1..4");
  double min_link = 1.0;
  for (int m = 0; m < band.n_cells; ++m)
    min_link = std::min(min_link, std::abs(bloch_link(band, m, 1)));
  if (min_link <= link_threshold)
    throw UndefinedQuantityError(
        "gapless band: a momentum-grid link vanishes and the gauge-invariant "
        "cumulants are undefined");

  const int q_need = stencil_radius(4, accuracy);
  const CharSeq cs = bloch_char_seq(band, q_need);
  const auto reduced = reduced_cumulants(cs, accuracy, link_threshold);

  std::vector<double> out;
  out.reserve(n_max);
  const double dk = band.delta_k();
  double scale = 1.0;  // (delta k)^{n-1}
  for (int n = 1; n <= n_max; ++n) {
    const Flagged& r = reduced[n - 1];
    if (!r.valid) throw UndefinedQuantityError(r.reason);
    out.push_back(r.value / scale);
    scale *= dk;
  }
  return out;
}

}  // namespace polcum
