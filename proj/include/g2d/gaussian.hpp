#pragma once

#include <Eigen/Dense>

#include "g2d/symplectic.hpp"

namespace g2d::gaussian {

/// Real symmetric positive-definite 2x2 matrix with unit determinant.
/// Encodes a zero-mean Gaussian pure state; the covariance matrix is G^{-1}/2.
struct GMatrix {
  Eigen::Matrix2d m;
  explicit GMatrix(const Eigen::Matrix2d& g);
};

/// Zero-mean squeezed-vacuum pure state.
struct SqueezedVacuum {
  symplectic::ShapeParams shape;

  explicit SqueezedVacuum(const symplectic::ShapeParams& shape_in) : shape(shape_in) {}
  /// Energy is the canonical parameter; the s-view uses the s >= 1 branch.
  explicit SqueezedVacuum(const symplectic::EnergyShape& es);

  double energy() const;
  Eigen::Matrix2d covariance() const;
  GMatrix g() const;
};

/// Position wavefunction of an axis-aligned (theta = 0) squeezed vacuum.
/// Rotated states have complex wavefunctions and are not supported here.
double wavefunction(const SqueezedVacuum& state, double x);

GMatrix g_matrix(const symplectic::ParabolicElement& p);
GMatrix g_matrix_shape(const symplectic::ShapeParams& sp);

/// W_G(z) = exp(-z^T G z) / pi.
double wigner(const GMatrix& g, const Eigen::Vector2d& z);

/// |<k|psi>|^2 for the squeezed vacuum of mean energy E (any orientation).
/// Zero for odd k; log-Gamma evaluation keeps large k finite.
double fock_overlap_closed(int k, double energy);

/// The same overlap from the position-space integral against the Hermite
/// functions, by Gauss-Hermite quadrature with a confirmation pass at
/// higher order (disagreement beyond 1e-9 reports instability).
double fock_overlap_quadrature(int k, double s);

/// Signed overlap amplitude <k|psi_s> behind fock_overlap_quadrature.
double overlap_amplitude_quadrature(int k, double s);

}  // namespace g2d::gaussian
