#include "g2d/numerics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace g2d::numerics {

namespace {

// Nodes are eigenvalues of the Jacobi matrix. Weights come from the closed
// form w_i = sqrt(pi) 2^{n-1} n! / (n^2 H_{n-1}(x_i)^2), which in terms of
// the normalized Hermite functions reads w_i e^{x_i^2} = 1/(n phi_{n-1}(x_i)^2).
// (Eigenvector-based weights lose all precision at the extreme nodes, where
// the first components underflow the solver's absolute accuracy.)
QuadratureRule build_hermite_modified(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite_modified: need n >= 1");
  QuadratureRule rule;
  if (n == 1) {
    rule.nodes = Eigen::VectorXd::Zero(1);
    rule.weights = Eigen::VectorXd::Constant(1, std::sqrt(std::numbers::pi));
    return rule;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n - 1);
  for (int i = 1; i < n; ++i) sub[i - 1] = std::sqrt(0.5 * i);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("gauss_hermite_modified: eigensolver failed");

  rule.nodes = solver.eigenvalues();
  rule.weights.resize(n);
  Eigen::VectorXd phi;
  for (int i = 0; i < n; ++i) {
    hermite_functions(n - 1, rule.nodes[i], phi);
    rule.weights[i] = 1.0 / (n * phi[n - 1] * phi[n - 1]);
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_hermite_modified(int n) {
  static std::mutex cache_mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_hermite_modified(n)).first;
  return it->second;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  QuadratureRule rule;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int i = 1; i < n; ++i) sub[i - 1] = i / std::sqrt(4.0 * i * i - 1.0);

  Eigen::VectorXd nodes01(n), weights01(n);
  if (n == 1) {
    nodes01[0] = 0.0;
    weights01[0] = 2.0;
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("gauss_legendre: eigensolver failed");
    nodes01 = solver.eigenvalues();
    for (int i = 0; i < n; ++i) {
      const double v = solver.eigenvectors()(0, i);
      weights01[i] = 2.0 * v * v;
    }
  }
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  rule.nodes = (nodes01.array() * half + mid).matrix();
  rule.weights = weights01 * half;
  return rule;
}

void hermite_functions(int kmax, double x, Eigen::VectorXd& out) {
  if (kmax < 0) throw std::invalid_argument("hermite_functions: need kmax >= 0");
  out.resize(kmax + 1);
  const double phi0 = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  out[0] = phi0;
  if (kmax == 0) return;
  out[1] = std::sqrt(2.0) * x * phi0;
  for (int k = 1; k < kmax; ++k) {
    out[k + 1] = std::sqrt(2.0 / (k + 1.0)) * x * out[k] - std::sqrt(k / (k + 1.0)) * out[k - 1];
  }
}

}  // namespace g2d::numerics
