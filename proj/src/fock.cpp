#include "g2d/fock.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace g2d::fock {

using std::complex;
namespace {
const complex<double> kI(0.0, 1.0);
}

FockVector basis_state(int dim, int k) {
  if (dim < 1) throw std::domain_error("basis_state: dim must be positive");
  if (k < 0 || k >= dim) throw std::domain_error("basis_state: k out of range");
  FockVector v = FockVector::Zero(dim);
  v[k] = 1.0;
  return v;
}

FockVector vacuum(int dim) { return basis_state(dim, 0); }

TruncatedOperator lowering(int dim) {
  if (dim < 1) throw std::domain_error("lowering: dim must be positive");
  TruncatedOperator a = TruncatedOperator::Zero(dim, dim);
  for (int k = 1; k < dim; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

std::pair<TruncatedOperator, TruncatedOperator> quadratures(int dim) {
  if (dim < 2) throw std::domain_error("quadratures: dim must be >= 2");
  const TruncatedOperator a = lowering(dim);
  const TruncatedOperator ad = a.adjoint();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  TruncatedOperator x = inv_sqrt2 * (a + ad);
  TruncatedOperator p = kI * inv_sqrt2 * (ad - a);
  return {std::move(x), std::move(p)};
}

TruncatedOperator unitary_exp(const TruncatedOperator& hermitian_generator) {
  const auto& h = hermitian_generator;
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw std::invalid_argument("unitary_exp: generator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<TruncatedOperator> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("unitary_exp: eigensolver failed");
  const Eigen::VectorXd& eigs = solver.eigenvalues();
  Eigen::VectorXcd phases(eigs.size());
  for (int i = 0; i < eigs.size(); ++i) phases[i] = std::exp(-kI * eigs[i]);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

TruncatedOperator displacement(double x, double p, int dim) {
  if (dim < 2) throw std::domain_error("displacement: dim must be >= 2");
  auto [xop, pop] = quadratures(dim);
  return unitary_exp(x * pop + p * xop);
}

namespace {

// Eigendecomposition of the phase-rotated displacement generator at unit
// radius: a real symmetric tridiagonal with off-diagonal -sqrt((k+1)/2).
// H(rho, phi) = e^{-i phi N} U^dag (rho T) U e^{i phi N} with U = diag(i^k),
// so one decomposition serves every (rho, phi).
struct DisplacementSpectral {
  Eigen::MatrixXd basis;
  Eigen::VectorXd levels;
};

const DisplacementSpectral& displacement_spectral(int working) {
  static std::mutex cache_mutex;
  static std::map<int, DisplacementSpectral> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(working);
  if (it != cache.end()) return it->second;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(working);
  Eigen::VectorXd sub(working - 1);
  for (int k = 0; k + 1 < working; ++k) sub[k] = -std::sqrt(0.5 * (k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("displacement_spectral: eigensolver failed");
  DisplacementSpectral spectral{solver.eigenvectors(), solver.eigenvalues()};
  return cache.emplace(working, std::move(spectral)).first->second;
}

}  // namespace

FockVector coherent_state(double x, double p, int dim, int working_dim) {
  if (dim < 1) throw std::domain_error("coherent_state: dim must be positive");
  const double mean_photons = 0.5 * (x * x + p * p);
  int working = working_dim;
  if (working <= 0) {
    working = std::max(dim, static_cast<int>(std::ceil(mean_photons + 7.0 * std::sqrt(mean_photons) + 16.0)));
    working = ((working + 31) / 32) * 32;  // bound the cache variety
  }
  const auto& spectral = displacement_spectral(working);
  const double rho = std::hypot(x, p);
  const double phi = std::atan2(p, x);
  Eigen::VectorXcd evolved(working);
  for (int j = 0; j < working; ++j)
    evolved[j] = std::exp(-kI * rho * spectral.levels[j]) * spectral.basis(0, j);
  Eigen::VectorXcd displaced(working);
  displaced.real() = spectral.basis * evolved.real();
  displaced.imag() = spectral.basis * evolved.imag();
  FockVector out(dim);
  for (int k = 0; k < dim; ++k) {
    const complex<double> phase = std::exp(-kI * (0.5 * std::numbers::pi * k + phi * k));
    out[k] = phase * displaced[k];
  }
  return out;
}

TruncatedOperator squeeze_unitary(double s, double theta, int dim) {
  if (!(s > 0.0)) throw std::domain_error("squeeze_unitary: s must be positive");
  if (dim < 1) throw std::domain_error("squeeze_unitary: dim must be positive");
  const TruncatedOperator a = lowering(dim);
  const TruncatedOperator a2 = a * a;
  const complex<double> phase = std::exp(-2.0 * kI * theta);
  const double r = 0.5 * std::log(s);
  // K = r (e^{-2i theta} a^dag^2 - e^{2i theta} a^2) is anti-Hermitian;
  // exp(K) = exp(-i (iK)) with iK Hermitian.
  TruncatedOperator k = r * (phase * TruncatedOperator(a2.adjoint()) - std::conj(phase) * a2);
  return unitary_exp(kI * k);
}

TruncatedOperator parity(int dim) {
  if (dim < 1) throw std::domain_error("parity: dim must be positive");
  TruncatedOperator p = TruncatedOperator::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) p(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  return p;
}

TruncatedOperator even_projector(int dim) {
  if (dim < 1) throw std::domain_error("even_projector: dim must be positive");
  TruncatedOperator p = TruncatedOperator::Zero(dim, dim);
  for (int k = 0; k < dim; k += 2) p(k, k) = 1.0;
  return p;
}

namespace {

// The beamsplitter generator (pi/4)(a1^dag a2 - a1 a2^dag) preserves total
// photon number, so the unitary splits over total-n blocks. Basis inside
// block n: |k1, n-k1> for k1 = max(0, n-dim+1) .. min(n, dim-1).
struct BeamsplitterBlocks {
  std::vector<int> first_k1;                // per block
  std::vector<Eigen::MatrixXcd> unitaries;  // per block
};

const BeamsplitterBlocks& beamsplitter_blocks(int dim) {
  static std::mutex cache_mutex;
  static std::map<int, BeamsplitterBlocks> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;

  BeamsplitterBlocks blocks;
  const double angle = std::numbers::pi / 4.0;
  for (int n = 0; n <= 2 * (dim - 1); ++n) {
    const int k1_lo = std::max(0, n - dim + 1);
    const int k1_hi = std::min(n, dim - 1);
    const int m = k1_hi - k1_lo + 1;
    Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i + 1 < m; ++i) {
      const int k1 = k1_lo + i;
      const double c = std::sqrt(static_cast<double>(k1 + 1) * (n - k1));
      gen(i + 1, i) = c;   // a1^dag a2
      gen(i, i + 1) = -c;  // -a1 a2^dag
    }
    blocks.first_k1.push_back(k1_lo);
    blocks.unitaries.push_back(unitary_exp(kI * angle * gen));
  }
  return cache.emplace(dim, std::move(blocks)).first->second;
}

}  // namespace

TruncatedOperator refactorization_5050(int dim) {
  if (dim < 2) throw std::domain_error("refactorization_5050: dim must be >= 2");
  const auto& blocks = beamsplitter_blocks(dim);
  const int total = dim * dim;
  TruncatedOperator u = TruncatedOperator::Zero(total, total);
  for (size_t b = 0; b < blocks.unitaries.size(); ++b) {
    const int n = static_cast<int>(b);
    const int k1_lo = blocks.first_k1[b];
    const auto& block = blocks.unitaries[b];
    for (int i = 0; i < block.rows(); ++i) {
      const int row = (k1_lo + i) * dim + (n - k1_lo - i);
      for (int j = 0; j < block.cols(); ++j) {
        const int col = (k1_lo + j) * dim + (n - k1_lo - j);
        u(row, col) = block(i, j);
      }
    }
  }
  return u;
}

FockVector apply_refactorization_5050(const FockVector& two_mode_state, int dim) {
  if (dim < 2) throw std::domain_error("apply_refactorization_5050: dim must be >= 2");
  if (two_mode_state.size() != static_cast<Eigen::Index>(dim) * dim)
    throw std::invalid_argument("apply_refactorization_5050: state size must be dim^2");
  const auto& blocks = beamsplitter_blocks(dim);
  FockVector out = FockVector::Zero(two_mode_state.size());
  for (size_t b = 0; b < blocks.unitaries.size(); ++b) {
    const int n = static_cast<int>(b);
    const int k1_lo = blocks.first_k1[b];
    const auto& block = blocks.unitaries[b];
    Eigen::VectorXcd sub(block.rows());
    for (int i = 0; i < block.rows(); ++i) sub[i] = two_mode_state[(k1_lo + i) * dim + (n - k1_lo - i)];
    Eigen::VectorXcd mapped = block * sub;
    for (int i = 0; i < block.rows(); ++i) out[(k1_lo + i) * dim + (n - k1_lo - i)] = mapped[i];
  }
  return out;
}

TruncatedOperator two_mode_swap(int dim) {
  if (dim < 1) throw std::domain_error("two_mode_swap: dim must be positive");
  const int total = dim * dim;
  TruncatedOperator swap = TruncatedOperator::Zero(total, total);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) swap(i * dim + j, j * dim + i) = 1.0;
  return swap;
}

TruncatedOperator partial_trace_second(const TruncatedOperator& two_mode_op, int dim) {
  if (two_mode_op.rows() != static_cast<Eigen::Index>(dim) * dim ||
      two_mode_op.cols() != two_mode_op.rows())
    throw std::invalid_argument("partial_trace_second: operator must be dim^2 square");
  TruncatedOperator out = TruncatedOperator::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) out(i, j) += two_mode_op(i * dim + k, j * dim + k);
  return out;
}

}  // namespace g2d::fock
