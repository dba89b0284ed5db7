#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "polcum/char_seq.hpp"

namespace polcum {

enum class PathClosure { Cyclic, SymmetryClosed };

/// Ordered discrete path of normalized states. A Cyclic path wraps indices
/// modulo M; a SymmetryClosed path applies the diagonal unitary
/// `symmetry_phase` entrywise to every ket whose index overflows the stored
/// range (open-path geometric phases with symmetry-related endpoints).
struct StatePath {
  std::vector<Eigen::VectorXcd> states;
  PathClosure closure = PathClosure::Cyclic;
  Eigen::VectorXcd symmetry_phase;  // unit-modulus entries; SymmetryClosed only

  int size() const { return static_cast<int>(states.size()); }
};

/// Shifted overlap product Gamma_q = prod_J <Psi_J | Psi_{J+q}> with the
/// closure rule applied to wrapped kets. Gauge invariant: every state enters
/// once as a bra and once as a ket. Requires 0 <= q < M.
std::complex<double> gamma_q(const StatePath& path, int shift);

/// Im Log Gamma_1 on the principal branch (-pi, pi]; the value is only
/// defined modulo 2 pi. Throws DegeneracyError when a nearest-neighbor link
/// magnitude falls below `zero_link_threshold`: the path crossed a degeneracy
/// point and the phase is undefined (moment-based diagnostics remain usable).
double discrete_berry_phase(const StatePath& path,
                            double zero_link_threshold = 1e-12);

/// Lower band of the two-site alternating-hopping chain on a discrete
/// momentum grid k_m = 2 pi m / (n_cells * cell_length), m = 0..n_cells-1.
/// Basis sites sit at -1/2 and +1/2 within the two-site cell; each Bloch
/// vector is gauge-fixed by making its first nonvanishing component real
/// positive. Built from the analytic 2x2 Bloch Hamiltonian, so gap closure
/// produces exact zero links instead of eigensolver noise.
struct BlochBand {
  double j_odd = 0.0;
  double j_even = 0.0;
  int n_cells = 0;
  Eigen::Matrix2Xcd u;  // column m = u(k_m), normalized

  static constexpr double kCellLength = 2.0;
  double length() const { return kCellLength * n_cells; }
  double delta_k() const;
};

BlochBand ssh_lower_band(double j_odd, double j_even, int n_cells);

/// Z_q = prod_m <u_{k_m} | u_{k_{(m+q) % N_c}}> with the symmetry phase
/// e^{-i 2 pi x / cell_length} applied to wrapped kets. For the filled lower
/// band this reproduces the real-space |Z_q| of the determinant exactly.
CharSeq bloch_char_seq(const BlochBand& band, int q_max);

/// Grid estimates of the gauge-invariant band cumulants: reduced cumulants
/// rescaled as c_n / (delta k)^{n-1}, so the first entry estimates the
/// open-path (Zak) phase and the rest converge to O(1) numbers for
/// insulators. Throws UndefinedQuantityError when a nearest-neighbor link
/// magnitude is below `link_threshold` (gapless band).
std::vector<double> swm_discrete_cumulants(const BlochBand& band, int n_max,
                                           int accuracy = 1,
                                           double link_threshold = 1e-12);

}  // namespace polcum
