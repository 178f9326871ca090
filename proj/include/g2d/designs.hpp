#pragma once

#include <vector>

#include <Eigen/Dense>

#include "g2d/fock.hpp"

namespace g2d::designs {

using fock::FockVector;
using fock::TruncatedOperator;

/// Discretized rotation-invariant measure f(E) dE on an energy grid.
/// Weights are normalized to sum 1 on construction.
struct EnsembleSpec {
  Eigen::VectorXd energies;  // strictly increasing, all >= 1/2
  Eigen::VectorXd weights;   // nonnegative, sum 1
  bool rotation_invariant = true;

  EnsembleSpec(Eigen::VectorXd energies_in, Eigen::VectorXd weights_in);

  /// Uniform density on [emin, emax], trapezoidal grid weights.
  static EnsembleSpec uniform(double emin, double emax, int points);
  static EnsembleSpec delta(double energy);
};

struct SpectrumReport {
  int kmax = 0;
  Eigen::VectorXd diagonal;        // a_k: averaged weight on |2k><2k|
  Eigen::VectorXd weight_factors;  // w_k: averaged energy-dependent factor
  Eigen::VectorXd gamma_coeffs;    // Gamma(k+1/2)/Gamma(k+1)
  double flatness_ratio = 0;       // a_kmax / a_0
  double min_max_ratio = 0;        // min_k a_k / max_k a_k
};

/// Gamma(k+1/2) / Gamma(k+1), via log-Gamma.
double gamma_coeff(int k);

struct TwirlOptions {
  int radial_nodes = 0;   // 0: pick from the radius
  int angular_nodes = 0;  // 0: pick from dim
  int working_dim = 0;    // 0: pick from radius and dim (see hw_partial_twirl)
};

/// Partial Heisenberg-Weyl twirl of |psi><psi|: the integral of
/// D |psi><psi| D^dag over the disk |(x,p)| < radius, projected onto dim.
/// Displaced states are computed at an internal working dimension large
/// enough to hold the whole disk, so the projected partial integrals
/// converge (diagonal -> 2*pi) instead of reflecting off the cutoff.
TruncatedOperator hw_partial_twirl(const FockVector& fiducial, double radius, int dim,
                                   const TwirlOptions& options = {});

struct TwirlMetrics {
  double mean_diagonal = 0;
  double diagonal_spread = 0;  // (max - min) / mean over k <= kmax
  double offdiagonal_max = 0;  // max |entry|, i != j, over the same block
};
TwirlMetrics twirl_metrics(const TruncatedOperator& op, int kmax);

/// Schmidt coefficients of the refactorized two-copy state |psi>|psi>
/// across the +/- split, descending; sum of squares ~ 1 for states
/// supported well below the cutoff.
std::vector<double> two_copy_schmidt(const FockVector& fiducial, int dim);

/// The x_- factor of the two-copy state of a Gaussian (Schmidt rank 1)
/// fiducial; global phase fixed so the largest amplitude is real positive.
FockVector minus_factor_state(const FockVector& fiducial, int dim);

SpectrumReport ensemble_average_spectrum(const EnsembleSpec& spec, int kmax);

/// Normalized limit spectrum a_k/a_0 for infinitely squeezed ensembles:
/// gamma_coeff(k)/sqrt(pi), the flattest profile any Gaussian ensemble reaches.
Eigen::VectorXd heterodyne_limit_spectrum(int kmax);

/// 1 - min_k a_k / max_k a_k over k <= kmax; 0 iff the spectrum is flat.
double two_design_deviation(const SpectrumReport& report);

/// Unnormalized averaged weight on |2k><2k| for the constant invariant
/// density 4 on [1/2, emax] (trapezoidal grid; grid_points 0 = auto).
double invariant_measure_partial_diagonal(int k, double emax, int grid_points = 0);

/// Projector onto the symmetric subspace of the dim^2 two-mode space.
TruncatedOperator symmetric_projector_2copy(int dim);

/// Operator-norm distance between Hermitian operators.
double spectral_distance(const TruncatedOperator& lhs, const TruncatedOperator& rhs);

struct FrameOperator2Copy {
  TruncatedOperator average;  // weighted average of |psi psi><psi psi|
  double distance_to_symmetric_projector = 0;  // vs Pi_symm / Tr(Pi_symm)
};
FrameOperator2Copy frame_operator_2copy(const std::vector<FockVector>& states,
                                        const Eigen::VectorXd& weights, int dim);

/// Square displacement grid of the vacuum, for finite HW-orbit experiments.
/// Covers [-half_width, half_width]^2 with the given step.
std::vector<FockVector> coherent_grid_states(double half_width, double step, int dim);

}  // namespace g2d::designs
