#include "g2d/designs.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "g2d/errors.hpp"
#include "g2d/gaussian.hpp"
#include "g2d/numerics.hpp"

namespace g2d::designs {

using std::complex;
namespace {
const complex<double> kI(0.0, 1.0);
constexpr double kNormTolerance = 1e-8;

void require_normalized(const FockVector& state, const char* who) {
  if (std::abs(state.norm() - 1.0) > kNormTolerance)
    throw std::domain_error(std::string(who) + ": fiducial must be normalized");
}
}  // namespace

EnsembleSpec::EnsembleSpec(Eigen::VectorXd energies_in, Eigen::VectorXd weights_in)
    : energies(std::move(energies_in)), weights(std::move(weights_in)) {
  if (energies.size() == 0) throw std::domain_error("EnsembleSpec: empty energy grid");
  if (weights.size() != energies.size())
    throw std::domain_error("EnsembleSpec: grid/weight size mismatch");
  for (int i = 0; i < energies.size(); ++i) {
    if (energies[i] < 0.5) throw std::domain_error("EnsembleSpec: energies must be >= 1/2");
    if (i > 0 && energies[i] <= energies[i - 1])
      throw std::domain_error("EnsembleSpec: energy grid must be strictly increasing");
    if (weights[i] < 0.0) throw std::domain_error("EnsembleSpec: weights must be nonnegative");
  }
  const double total = weights.sum();
  if (!(total > 0.0)) throw std::domain_error("EnsembleSpec: weights sum to zero");
  weights /= total;
}

EnsembleSpec EnsembleSpec::uniform(double emin, double emax, int points) {
  if (points < 2) throw std::domain_error("EnsembleSpec::uniform: need at least 2 points");
  if (!(emax > emin)) throw std::domain_error("EnsembleSpec::uniform: emax must exceed emin");
  Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(points, emin, emax);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(points);
  w[0] = w[points - 1] = 0.5;  // trapezoid
  return EnsembleSpec(std::move(grid), std::move(w));
}

EnsembleSpec EnsembleSpec::delta(double energy) {
  return EnsembleSpec(Eigen::VectorXd::Constant(1, energy), Eigen::VectorXd::Ones(1));
}

double gamma_coeff(int k) {
  if (k < 0) throw std::domain_error("gamma_coeff: k must be nonnegative");
  return std::exp(std::lgamma(k + 0.5) - std::lgamma(k + 1.0));
}

TruncatedOperator hw_partial_twirl(const FockVector& fiducial, double radius, int dim,
                                   const TwirlOptions& options) {
  if (!(radius > 0.0)) throw std::domain_error("hw_partial_twirl: radius must be positive");
  if (dim < 1) throw std::domain_error("hw_partial_twirl: dim must be positive");
  if (fiducial.size() != dim)
    throw std::invalid_argument("hw_partial_twirl: fiducial must have length dim");
  require_normalized(fiducial, "hw_partial_twirl");

  // Displaced states are produced at a working dimension that holds the whole
  // disk (coherent amplitudes reach r^2/2 photons), then projected onto dim.
  const int working =
      options.working_dim > 0
          ? options.working_dim
          : dim + static_cast<int>(std::ceil(0.5 * radius * radius + 7.1 * radius + 24.0));
  const int n_radial = options.radial_nodes > 0
                           ? options.radial_nodes
                           : 64 + 8 * static_cast<int>(std::ceil(radius));
  const int n_angular = options.angular_nodes > 0 ? options.angular_nodes : std::max(64, 4 * dim);

  // The generator of D(rho, phi) obeys H(rho, phi) = e^{-i phi N} H(rho, 0) e^{i phi N}
  // and H(rho, 0) = rho P, which a diagonal phase turns into a real symmetric
  // tridiagonal T with eigenvalues scaling linearly in rho. One decomposition
  // of T serves every quadrature node.
  Eigen::VectorXd tri_diag = Eigen::VectorXd::Zero(working);
  Eigen::VectorXd tri_sub(working - 1);
  for (int k = 0; k + 1 < working; ++k) tri_sub[k] = -std::sqrt(0.5 * (k + 1));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(tri_diag, tri_sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hw_partial_twirl: eigensolver failed");
  const Eigen::MatrixXd& basis = solver.eigenvectors();
  const Eigen::VectorXd& levels = solver.eigenvalues();

  Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(working);
  padded.head(dim) = fiducial;

  const auto radial = numerics::gauss_legendre(n_radial, 0.0, radius);
  std::vector<Eigen::VectorXcd> radial_phases(n_radial);
  for (int i = 0; i < n_radial; ++i) {
    radial_phases[i] = (-kI * radial.nodes[i] * levels.array()).exp().matrix();
  }

  TruncatedOperator result = TruncatedOperator::Zero(dim, dim);
  Eigen::VectorXcd phase(working), rotated(working), spectral(working), evolved(working),
      displaced(working);
  Eigen::VectorXcd projected(dim);
  const double angular_weight = 2.0 * std::numbers::pi / n_angular;
  for (int j = 0; j < n_angular; ++j) {
    const double phi = angular_weight * j;
    for (int k = 0; k < working; ++k) {
      // i^k e^{i phi k}: the tridiagonalizing phases merged with the rotation.
      phase[k] = std::exp(kI * (0.5 * std::numbers::pi * k + phi * k));
    }
    rotated = phase.cwiseProduct(padded);
    spectral.real() = basis.transpose() * rotated.real();
    spectral.imag() = basis.transpose() * rotated.imag();
    for (int i = 0; i < n_radial; ++i) {
      evolved = radial_phases[i].cwiseProduct(spectral);
      displaced.real() = basis * evolved.real();
      displaced.imag() = basis * evolved.imag();
      projected = phase.head(dim).conjugate().cwiseProduct(displaced.head(dim));
      const double weight = radial.weights[i] * radial.nodes[i] * angular_weight;
      result.noalias() += weight * projected * projected.adjoint();
    }
  }
  return result;
}

TwirlMetrics twirl_metrics(const TruncatedOperator& op, int kmax) {
  const int block = std::min<int>(kmax + 1, static_cast<int>(op.rows()));
  if (block < 1) throw std::invalid_argument("twirl_metrics: empty block");
  TwirlMetrics metrics;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double sum = 0.0;
  for (int k = 0; k < block; ++k) {
    const double d = op(k, k).real();
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    sum += d;
  }
  metrics.mean_diagonal = sum / block;
  metrics.diagonal_spread = metrics.mean_diagonal != 0.0 ? (hi - lo) / metrics.mean_diagonal : 0.0;
  metrics.offdiagonal_max = 0.0;
  for (int i = 0; i < block; ++i)
    for (int j = 0; j < block; ++j)
      if (i != j) metrics.offdiagonal_max = std::max(metrics.offdiagonal_max, std::abs(op(i, j)));
  return metrics;
}

namespace {

Eigen::MatrixXcd refactorized_two_copy_matrix(const FockVector& fiducial, int dim,
                                              const char* who) {
  if (dim < 2) throw std::domain_error(std::string(who) + ": dim must be >= 2");
  if (fiducial.size() != dim)
    throw std::invalid_argument(std::string(who) + ": fiducial must have length dim");
  require_normalized(fiducial, who);
  double tail = 0.0;
  for (int k = std::max(0, dim - 2); k < dim; ++k) tail += std::norm(fiducial[k]);
  if (tail > 1e-6)
    throw capability_error(std::string(who) + ": fiducial support too close to cutoff");

  FockVector two_copy(static_cast<Eigen::Index>(dim) * dim);
  for (int k1 = 0; k1 < dim; ++k1)
    for (int k2 = 0; k2 < dim; ++k2) two_copy[k1 * dim + k2] = fiducial[k1] * fiducial[k2];
  const FockVector mapped = fock::apply_refactorization_5050(two_copy, dim);

  Eigen::MatrixXcd m(dim, dim);  // rows: x_+ index, cols: x_- index
  for (int k1 = 0; k1 < dim; ++k1)
    for (int k2 = 0; k2 < dim; ++k2) m(k1, k2) = mapped[k1 * dim + k2];
  return m;
}

}  // namespace

std::vector<double> two_copy_schmidt(const FockVector& fiducial, int dim) {
  const Eigen::MatrixXcd m = refactorized_two_copy_matrix(fiducial, dim, "two_copy_schmidt");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

FockVector minus_factor_state(const FockVector& fiducial, int dim) {
  const Eigen::MatrixXcd m = refactorized_two_copy_matrix(fiducial, dim, "minus_factor_state");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() > 1 && sv[1] > 1e-3 * sv[0])
    throw std::domain_error("minus_factor_state: fiducial is not Gaussian (Schmidt rank > 1)");
  FockVector minus = svd.matrixV().col(0).conjugate();
  Eigen::Index peak = 0;
  minus.cwiseAbs().maxCoeff(&peak);
  const complex<double> anchor = minus[peak];
  minus *= std::conj(anchor) / std::abs(anchor);
  return minus;
}

SpectrumReport ensemble_average_spectrum(const EnsembleSpec& spec, int kmax) {
  if (kmax < 0) throw std::domain_error("ensemble_average_spectrum: kmax must be nonnegative");
  if (!spec.rotation_invariant)
    throw capability_error("ensemble_average_spectrum: only rotation-invariant specs supported");
  SpectrumReport report;
  report.kmax = kmax;
  report.diagonal.resize(kmax + 1);
  report.weight_factors.resize(kmax + 1);
  report.gamma_coeffs.resize(kmax + 1);
  for (int k = 0; k <= kmax; ++k) {
    double a = 0.0;
    double w = 0.0;
    for (int i = 0; i < spec.energies.size(); ++i) {
      const double energy = spec.energies[i];
      a += spec.weights[i] * gaussian::fock_overlap_closed(2 * k, energy);
      const double ratio = (2.0 * energy - 1.0) / (2.0 * energy + 1.0);
      w += spec.weights[i] * std::pow(ratio, k) / std::sqrt(2.0 * energy + 1.0);
    }
    report.diagonal[k] = a;
    report.weight_factors[k] = w;
    report.gamma_coeffs[k] = gamma_coeff(k);
  }
  report.flatness_ratio = report.diagonal[kmax] / report.diagonal[0];
  report.min_max_ratio = report.diagonal.minCoeff() / report.diagonal.maxCoeff();
  return report;
}

Eigen::VectorXd heterodyne_limit_spectrum(int kmax) {
  if (kmax < 0) throw std::domain_error("heterodyne_limit_spectrum: kmax must be nonnegative");
  Eigen::VectorXd profile(kmax + 1);
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  for (int k = 0; k <= kmax; ++k) profile[k] = gamma_coeff(k) / sqrt_pi;
  return profile;
}

double two_design_deviation(const SpectrumReport& report) {
  if (report.diagonal.size() == 0 || !(report.diagonal.maxCoeff() > 0.0))
    throw std::domain_error("two_design_deviation: spectrum is all zero");
  return 1.0 - report.diagonal.minCoeff() / report.diagonal.maxCoeff();
}

double invariant_measure_partial_diagonal(int k, double emax, int grid_points) {
  if (k < 0) throw std::domain_error("invariant_measure_partial_diagonal: k must be nonnegative");
  if (!(emax > 0.5)) throw std::domain_error("invariant_measure_partial_diagonal: emax must exceed 1/2");
  int n = grid_points;
  if (n <= 0) n = static_cast<int>(std::min(400001.0, std::max(20001.0, 40.0 * emax + 1.0)));
  const double h = (emax - 0.5) / (n - 1);
  const double density = symplectic::invariant_density_energy();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double energy = 0.5 + h * i;
    const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
    sum += w * density * gaussian::fock_overlap_closed(2 * k, energy);
  }
  return sum;
}

TruncatedOperator symmetric_projector_2copy(int dim) {
  const int total = dim * dim;
  return 0.5 * (TruncatedOperator::Identity(total, total) + fock::two_mode_swap(dim));
}

double spectral_distance(const TruncatedOperator& lhs, const TruncatedOperator& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw std::invalid_argument("spectral_distance: size mismatch");
  const TruncatedOperator diff = lhs - rhs;
  const double scale = std::max(1.0, diff.cwiseAbs().maxCoeff());
  if ((diff - diff.adjoint()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw std::invalid_argument("spectral_distance: operators must be Hermitian");
  Eigen::SelfAdjointEigenSolver<TruncatedOperator> solver(diff, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

FrameOperator2Copy frame_operator_2copy(const std::vector<FockVector>& states,
                                        const Eigen::VectorXd& weights, int dim) {
  if (states.empty()) throw std::domain_error("frame_operator_2copy: empty ensemble");
  if (weights.size() != static_cast<Eigen::Index>(states.size()))
    throw std::invalid_argument("frame_operator_2copy: state/weight size mismatch");
  const double total = weights.sum();
  if (!(total > 0.0)) throw std::domain_error("frame_operator_2copy: weights sum to zero");

  const int two_mode = dim * dim;
  FrameOperator2Copy out;
  out.average = TruncatedOperator::Zero(two_mode, two_mode);
  Eigen::VectorXcd product(two_mode);
  for (size_t idx = 0; idx < states.size(); ++idx) {
    const FockVector& psi = states[idx];
    if (psi.size() != dim)
      throw std::invalid_argument("frame_operator_2copy: state has wrong dimension");
    // Subnormalized states are projections of states extending past the
    // cutoff (finite HW-orbit grids); norms above 1 are invalid.
    if (psi.norm() > 1.0 + 1e-12)
      throw std::domain_error("frame_operator_2copy: state norm exceeds 1");
    for (int k1 = 0; k1 < dim; ++k1)
      for (int k2 = 0; k2 < dim; ++k2) product[k1 * dim + k2] = psi[k1] * psi[k2];
    out.average.noalias() += (weights[idx] / total) * product * product.adjoint();
  }

  const TruncatedOperator projector = symmetric_projector_2copy(dim);
  const double projector_trace = projector.trace().real();
  const double average_trace = out.average.trace().real();
  out.distance_to_symmetric_projector =
      spectral_distance(out.average / average_trace, projector / projector_trace);
  return out;
}

std::vector<FockVector> coherent_grid_states(double half_width, double step, int dim) {
  if (!(half_width > 0.0) || !(step > 0.0))
    throw std::domain_error("coherent_grid_states: half_width and step must be positive");
  const int n_side = static_cast<int>(std::floor(half_width / step));
  std::vector<FockVector> states;
  states.reserve(static_cast<size_t>(2 * n_side + 1) * (2 * n_side + 1));
  for (int ix = -n_side; ix <= n_side; ++ix)
    for (int ip = -n_side; ip <= n_side; ++ip)
      states.push_back(fock::coherent_state(ix * step, ip * step, dim));
  return states;
}

}  // namespace g2d::designs
