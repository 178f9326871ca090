#pragma once

#include <utility>

#include <Eigen/Dense>

namespace g2d::fock {

using FockVector = Eigen::VectorXcd;
using TruncatedOperator = Eigen::MatrixXcd;

FockVector basis_state(int dim, int k);
FockVector vacuum(int dim);

/// Truncated lowering operator a, <k-1|a|k> = sqrt(k).
TruncatedOperator lowering(int dim);

/// Position and momentum with [X, P] = i on the interior block,
/// H = X^2 + P^2 and <0|X^2|0> = <0|P^2|0> = 1/2.
std::pair<TruncatedOperator, TruncatedOperator> quadratures(int dim);

/// exp(-i H) for Hermitian H, via eigendecomposition of the truncated
/// generator; exactly unitary up to rounding.
TruncatedOperator unitary_exp(const TruncatedOperator& hermitian_generator);

/// Phase-space translation exp(-i (x P + p X)).
TruncatedOperator displacement(double x, double p, int dim);

/// The displaced vacuum D(x,p)|0>, computed at a working dimension large
/// enough for the displacement magnitude (auto when 0) and projected onto
/// dim. Norm < 1 when the coherent state extends past the cutoff.
FockVector coherent_state(double x, double p, int dim, int working_dim = 0);

/// Truncated unitary sending |0> to the squeezed vacuum of shape (s, theta),
/// with the phase fixed so <0|S|0> > 0. Generator (ln s / 2)(e^{-2i theta} a^dag^2 - e^{2i theta} a^2).
TruncatedOperator squeeze_unitary(double s, double theta, int dim);

/// Diagonal (-1)^k.
TruncatedOperator parity(int dim);

/// Diagonal projector onto even photon numbers, (1 + parity)/2.
TruncatedOperator even_projector(int dim);

/// Two-mode 50:50 beamsplitter realizing the coordinate change
/// L^2(x1) x L^2(x2) -> L^2(x+) x L^2(x-) on the dim^2 space with row-major
/// index k1*dim + k2. The first output factor carries x+ = (x1+x2)/sqrt(2);
/// block diagonal in total photon number by construction.
TruncatedOperator refactorization_5050(int dim);

/// Apply refactorization_5050(dim) to a two-mode state vector without
/// materializing the dim^2 x dim^2 matrix.
FockVector apply_refactorization_5050(const FockVector& two_mode_state, int dim);

/// Two-mode SWAP, |k1 k2> -> |k2 k1>, on the dim^2 space.
TruncatedOperator two_mode_swap(int dim);

/// Trace out the second mode of an operator on the dim^2 two-mode space.
TruncatedOperator partial_trace_second(const TruncatedOperator& two_mode_op, int dim);

}  // namespace g2d::fock
