#include "polcum/lattice_models.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "polcum/errors.hpp"
#include "polcum/fibonacci.hpp"

namespace polcum {

namespace {

constexpr double kDegeneracyTolScale = 1e-9;

std::complex<double> plane_wave_phase(int momentum, int site, int sites) {
  const double arg = 2.0 * std::numbers::pi * momentum * site / sites;
  return {std::cos(arg), std::sin(arg)};
}

}  // namespace

ModelSpec ModelSpec::uniform_chain(int sites, Boundary bc, double t) {
  ModelSpec s;
  s.kind = ModelKind::UniformChain;
  s.sites = sites;
  s.bc = bc;
  s.t = t;
  s.validate();
  return s;
}

ModelSpec ModelSpec::ssh(int sites, double j_odd, double j_even, Boundary bc) {
  ModelSpec s;
  s.kind = ModelKind::Ssh;
  s.sites = sites;
  s.bc = bc;
  s.j_odd = j_odd;
  s.j_even = j_even;
  s.validate();
  return s;
}

ModelSpec ModelSpec::ssh_alternating(int sites, double j_mean, double j_delta,
                                     Boundary bc) {
  return ssh(sites, j_mean + j_delta, j_mean - j_delta, bc);
}

ModelSpec ModelSpec::aubry_andre(int fib_index, double potential, Boundary bc,
                                 double t, double phase_offset) {
  ModelSpec s;
  s.kind = ModelKind::AubryAndre;
  s.fib_index = fib_index;
  s.sites = static_cast<int>(fibonacci(fib_index));
  s.bc = bc;
  s.t = t;
  s.potential = potential;
  s.phase_offset = phase_offset;
  s.validate();
  return s;
}

void ModelSpec::validate() const {
  if (sites < 2) throw std::invalid_argument("model needs at least 2 sites");
  switch (kind) {
    case ModelKind::UniformChain:
      break;
    case ModelKind::Ssh:
      if (sites % 2 != 0)
        throw std::invalid_argument(
            "alternating-hopping chain needs an even site count (two sites per cell); got " +
            std::to_string(sites));
      break;
    case ModelKind::AubryAndre: {
      if (fib_index < 3)
        throw std::invalid_argument("quasiperiodic chain needs fib_index >= 3");
      if (fibonacci(fib_index) != sites)
        throw std::invalid_argument(
            "quasiperiodic chain needs L equal to the Fibonacci number of its index; got L = " +
            std::to_string(sites));
      break;
    }
  }
}

double aubry_andre_potential(const ModelSpec& spec, std::int64_t site) {
  const std::int64_t den = spec.sites;                 // F_n
  const std::int64_t num = fibonacci(spec.fib_index + 1);  // F_{n+1}
  std::int64_t r = (num * (site % den)) % den;
  if (r < 0) r += den;
  const double arg =
      2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den) +
      spec.phase_offset;
  return spec.potential * std::cos(arg);
}

ModelMatrix build_model(const ModelSpec& spec) {
  spec.validate();
  const int n = spec.sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);

  auto bond = [&](int a, int b, double amplitude) {
    h(a, b) += -amplitude;
    h(b, a) += -amplitude;
  };

  const bool periodic = spec.bc == Boundary::Periodic;
  switch (spec.kind) {
    case ModelKind::UniformChain:
    case ModelKind::AubryAndre:
      for (int j = 0; j + 1 < n; ++j) bond(j, j + 1, spec.t);
      // n == 2: the wrap bond coincides with the open bond; keep one coupling.
      if (periodic && n > 2) bond(n - 1, 0, spec.t);
      break;
    case ModelKind::Ssh:
      for (int j = 0; j + 1 < n; ++j)
        bond(j, j + 1, j % 2 == 0 ? spec.j_odd : spec.j_even);
      if (periodic && n > 2) bond(n - 1, 0, spec.j_even);
      break;
  }
  if (spec.kind == ModelKind::AubryAndre)
    for (int j = 0; j < n; ++j) h(j, j) = aubry_andre_potential(spec, j);

  return ModelMatrix{std::move(h)};
}

Spectrum eigensolve(const ModelMatrix& m) {
  // Keep the backing BLAS single-threaded: scan workers parallelize over grid
  // points and the results must not depend on a thread count.
  static std::once_flag blas_once;
  std::call_once(blas_once, [] { ::setenv("OPENBLAS_NUM_THREADS", "1", 1); });

  const int n = m.dim();
  if (n == 0) throw std::invalid_argument("empty matrix");
  for (int c = 0; c < n; ++c)
    for (int r = c + 1; r < n; ++r)
      if (m.entries(r, c) != m.entries(c, r))
        throw std::invalid_argument("matrix is not symmetric");

  Spectrum s;
  s.eigenvectors = m.entries;
  s.eigenvalues.resize(n);
  const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                  s.eigenvectors.data(), n, s.eigenvalues.data());
  if (info != 0)
    throw std::runtime_error("eigensolver did not converge (info = " +
                             std::to_string(info) + ")");

  const Eigen::MatrixXd residual =
      m.entries * s.eigenvectors - s.eigenvectors * s.eigenvalues.asDiagonal();
  s.residual_bound = residual.colwise().norm().maxCoeff();
  return s;
}

SlaterState occupy_ground(const Spectrum& s, int particles, OccupationMode mode) {
  const int dim = s.dim();
  if (particles < 1 || particles > dim)
    throw std::invalid_argument("particle count must be in [1, dim]");

  SlaterState state;
  state.sites = dim;
  state.particles = particles;

  if (mode == OccupationMode::PlaneWave) {
    // Momentum shells of the periodic uniform chain (t > 0 ordering):
    // {0}, {+-1}, {+-2}, ..., and the lone zone-boundary state for even L.
    std::vector<std::vector<int>> shells;
    shells.push_back({0});
    const int half = dim / 2;
    for (int k = 1; k < (dim + 1) / 2; ++k) shells.push_back({k, -k});
    if (dim % 2 == 0) shells.push_back({half});

    auto orbital = [&](int momentum) {
      Eigen::VectorXcd v(dim);
      for (int x = 0; x < dim; ++x)
        v(x) = plane_wave_phase(momentum, x, dim) / std::sqrt(double(dim));
      return v;
    };

    std::vector<int> filled;
    int remaining = particles;
    for (const auto& shell : shells) {
      if (remaining == 0) break;
      if (remaining >= static_cast<int>(shell.size())) {
        filled.insert(filled.end(), shell.begin(), shell.end());
        remaining -= static_cast<int>(shell.size());
        continue;
      }
      // One particle against a two-state shell: equal-weight superposition of
      // the two frontier determinants.
      Eigen::MatrixXcd base(dim, particles);
      for (int c = 0; c < particles - 1; ++c) base.col(c) = orbital(filled[c]);
      Eigen::MatrixXcd plus = base, minus = base;
      plus.col(particles - 1) = orbital(shell[0]);
      minus.col(particles - 1) = orbital(shell[1]);
      const double w = 1.0 / std::sqrt(2.0);
      state.terms.push_back({std::complex<double>(w, 0.0), std::move(plus)});
      state.terms.push_back({std::complex<double>(w, 0.0), std::move(minus)});
      state.degenerate = true;
      return state;
    }
    Eigen::MatrixXcd orbitals(dim, particles);
    for (int c = 0; c < particles; ++c) orbitals.col(c) = orbital(filled[c]);
    state.terms.push_back({std::complex<double>(1.0, 0.0), std::move(orbitals)});
    return state;
  }

  const auto& e = s.eigenvalues;
  const double width = e(dim - 1) - e(0);
  const double tol = kDegeneracyTolScale * std::max(1.0, width);

  const bool frontier_degenerate =
      particles < dim && e(particles) - e(particles - 1) < tol;

  if (!frontier_degenerate) {
    state.terms.push_back(
        {std::complex<double>(1.0, 0.0),
         s.eigenvectors.leftCols(particles).cast<std::complex<double>>()});
    return state;
  }

  const bool deeper =
      (particles >= 2 && e(particles - 1) - e(particles - 2) < tol) ||
      (particles + 1 < dim && e(particles + 1) - e(particles) < tol);
  if (deeper)
    throw DegeneracyError(
        "ground-state degeneracy at the Fermi level is deeper than two-fold");

  Eigen::MatrixXcd lower =
      s.eigenvectors.leftCols(particles).cast<std::complex<double>>();
  Eigen::MatrixXcd upper = lower;
  upper.col(particles - 1) =
      s.eigenvectors.col(particles).cast<std::complex<double>>();
  const double w = 1.0 / std::sqrt(2.0);
  state.terms.push_back({std::complex<double>(w, 0.0), std::move(lower)});
  state.terms.push_back({std::complex<double>(w, 0.0), std::move(upper)});
  state.degenerate = true;
  return state;
}

PositionMoments obc_position_moments(const Spectrum& s, int particles) {
  const int dim = s.dim();
  if (particles < 1 || particles > dim)
    throw std::invalid_argument("particle count must be in [1, dim]");

  // Per-site weight of the filled sea, normalized to one particle.
  Eigen::VectorXd weight = Eigen::VectorXd::Zero(dim);
  for (int m = 0; m < particles; ++m)
    weight += s.eigenvectors.col(m).cwiseAbs2();
  weight /= static_cast<double>(particles);

  PositionMoments out;
  for (int j = 0; j < dim; ++j) out.mean += j * weight(j);
  for (int j = 0; j < dim; ++j) {
    const double d = j - out.mean;
    const double d2 = d * d;
    out.m2 += d2 * weight(j);
    out.m4 += d2 * d2 * weight(j);
  }
  return out;
}

}  // namespace polcum
