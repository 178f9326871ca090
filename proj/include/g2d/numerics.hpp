#pragma once

#include <Eigen/Dense>

namespace g2d::numerics {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Gauss-Hermite rule with the e^{y^2} factor folded into the weights, so
/// that integral f(y) dy ~= sum_i w_i f(y_i) for integrands with built-in
/// Gaussian decay. Weights are assembled in log space, which keeps the
/// extreme nodes representable up to a few hundred points. Rules are cached;
/// the cache is safe for concurrent readers.
const QuadratureRule& gauss_hermite_modified(int n);

/// Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Harmonic-oscillator eigenfunctions phi_0..phi_kmax at x (unit L^2 norm),
/// by the three-term recurrence on the normalized functions. out is resized
/// to kmax+1. Underflows to zero far outside the classical region, which is
/// harmless for overlap integrals against states of bounded energy.
void hermite_functions(int kmax, double x, Eigen::VectorXd& out);

}  // namespace g2d::numerics
