#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

namespace polcum {

enum class ModelKind { UniformChain, Ssh, AubryAndre };
enum class Boundary { Open, Periodic };

/// One-dimensional tight-binding model. The lattice constant is one site
/// throughout, so lengths are measured in sites.
struct ModelSpec {
  ModelKind kind = ModelKind::UniformChain;
  int sites = 0;       // L
  Boundary bc = Boundary::Periodic;
  double t = 1.0;      // hopping (uniform chain, Aubry-Andre)
  double j_odd = 0.0;  // SSH hopping on bonds (0,1), (2,3), ...
  double j_even = 0.0; // SSH hopping on bonds (1,2), (3,4), ... and the wrap bond
  double potential = 0.0;  // Aubry-Andre strength W
  int fib_index = 0;       // Aubry-Andre: sites == fibonacci(fib_index)
  double phase_offset = 0.0;

  static ModelSpec uniform_chain(int sites, Boundary bc, double t = 1.0);
  static ModelSpec ssh(int sites, double j_odd, double j_even,
                       Boundary bc = Boundary::Periodic);
  /// SSH parametrized by mean hopping and alternation: j_odd = mean + delta,
  /// j_even = mean - delta.
  static ModelSpec ssh_alternating(int sites, double j_mean, double j_delta,
                                   Boundary bc = Boundary::Periodic);
  /// Quasiperiodic chain of L = F_n sites with modulation F_{n+1}/F_n. The
  /// rational approximant makes the onsite potential exactly L-periodic.
  static ModelSpec aubry_andre(int fib_index, double potential,
                               Boundary bc = Boundary::Periodic, double t = 1.0,
                               double phase_offset = 0.0);

  double j_mean() const { return 0.5 * (j_odd + j_even); }
  double j_delta() const { return 0.5 * (j_odd - j_even); }

  /// Throws std::invalid_argument with an explanation when a field
  /// combination is outside the supported family.
  void validate() const;
};

/// Onsite Aubry-Andre potential W cos(2 pi (F_{n+1}/F_n) j + phase), evaluated
/// with the index reduced mod L so the exact periodicity survives rounding.
double aubry_andre_potential(const ModelSpec& spec, std::int64_t site);

/// Dense real-symmetric single-particle Hamiltonian.
struct ModelMatrix {
  Eigen::MatrixXd entries;
  int dim() const { return static_cast<int>(entries.rows()); }
};

ModelMatrix build_model(const ModelSpec& spec);

/// Full eigendecomposition, eigenvalues ascending, eigenvectors orthonormal
/// columns. residual_bound is the largest achieved ||H v - lambda v||.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  double residual_bound = 0.0;
  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

Spectrum eigensolve(const ModelMatrix& m);

enum class OccupationMode { Numeric, PlaneWave };

struct SlaterTerm {
  std::complex<double> coefficient;
  Eigen::MatrixXcd orbitals;  // sites x particles, orthonormal columns
};

/// Free-fermion ground state: a single determinant, or the equal-weight
/// two-determinant superposition when the Fermi level is two-fold degenerate.
struct SlaterState {
  int sites = 0;
  int particles = 0;
  std::vector<SlaterTerm> terms;
  bool degenerate = false;
};

/// Occupies the lowest `particles` orbitals. Numeric mode uses the computed
/// eigenvectors and detects frontier degeneracy spectrally; PlaneWave mode
/// (periodic uniform chain with t > 0 only) fills analytic momentum shells.
/// Throws DegeneracyError when the frontier degeneracy is deeper than
/// two-fold.
SlaterState occupy_ground(const Spectrum& s, int particles,
                          OccupationMode mode = OccupationMode::Numeric);

/// Centered moments of the total-position distribution of the filled Fermi
/// sea. Meaningful for open chains, where the position operator is a plain
/// observable.
struct PositionMoments {
  double mean = 0.0;
  double m2 = 0.0;
  double m4 = 0.0;
};

PositionMoments obc_position_moments(const Spectrum& s, int particles);

}  // namespace polcum
