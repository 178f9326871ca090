#include "g2d/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "g2d/errors.hpp"
#include "g2d/numerics.hpp"

namespace g2d::gaussian {

namespace {
constexpr int kQuadratureKLimit = 200;  // stable recursion range
}

GMatrix::GMatrix(const Eigen::Matrix2d& g) : m(g) {
  const double scale = m.cwiseAbs().maxCoeff();
  if (std::abs(m(0, 1) - m(1, 0)) > 1e-10 * std::max(1.0, scale))
    throw std::domain_error("GMatrix: not symmetric");
  m(0, 1) = m(1, 0) = 0.5 * (m(0, 1) + m(1, 0));
  if (std::abs(m.determinant() - 1.0) > 1e-10 * std::max(1.0, scale * scale))
    throw std::domain_error("GMatrix: determinant must be 1");
  if (!(m(0, 0) > 0.0))  // unit determinant + positive corner = positive definite
    throw std::domain_error("GMatrix: not positive definite");
}

SqueezedVacuum::SqueezedVacuum(const symplectic::EnergyShape& es)
    : shape(symplectic::s_from_energy(es.energy, symplectic::EnergyBranch::plus), es.theta) {}

double SqueezedVacuum::energy() const { return symplectic::energy_from_s(shape.s); }

Eigen::Matrix2d SqueezedVacuum::covariance() const {
  return 0.5 * g().m.inverse();
}

GMatrix SqueezedVacuum::g() const { return g_matrix_shape(shape); }

double wavefunction(const SqueezedVacuum& state, double x) {
  if (state.shape.theta != 0.0)
    throw capability_error("wavefunction: only axis-aligned (theta = 0) states supported");
  const double s = state.shape.s;
  return std::pow(std::numbers::pi * s * s, -0.25) * std::exp(-x * x / (2.0 * s * s));
}

GMatrix g_matrix(const symplectic::ParabolicElement& p) {
  Eigen::Matrix2d g;
  g << p.u + p.v * p.v / p.u, p.v / p.u,
       p.v / p.u, 1.0 / p.u;
  return GMatrix(g);
}

GMatrix g_matrix_shape(const symplectic::ShapeParams& sp) {
  const double q = sp.s * sp.s;
  const Eigen::Matrix2d rot = symplectic::rotation(-sp.theta).matrix();
  Eigen::Matrix2d core;
  core << 1.0 / q, 0.0, 0.0, q;
  return GMatrix(rot.transpose() * core * rot);
}

double wigner(const GMatrix& g, const Eigen::Vector2d& z) {
  return std::exp(-z.dot(g.m * z)) / std::numbers::pi;
}

double fock_overlap_closed(int k, double energy) {
  if (k < 0) throw std::domain_error("fock_overlap_closed: k must be nonnegative");
  if (energy < 0.5) throw std::domain_error("fock_overlap_closed: energy must be >= 1/2");
  if (k % 2 != 0) return 0.0;
  const int half = k / 2;
  const double ratio = (2.0 * energy - 1.0) / (2.0 * energy + 1.0);
  const double coeff = std::exp(std::lgamma(half + 0.5) - std::lgamma(half + 1.0));
  return std::sqrt(2.0 / std::numbers::pi) * coeff / std::sqrt(2.0 * energy + 1.0) *
         std::pow(ratio, half);
}

namespace {

double amplitude_at_order(int k, double s, int nodes) {
  const auto& rule = numerics::gauss_hermite_modified(nodes);
  // Substitute x = y / lambda so the combined Gaussian of the integrand
  // matches the e^{-y^2} weight; the polynomial factor is then integrated
  // exactly for nodes > k/2.
  const double lambda = std::sqrt(0.5 * (1.0 + 1.0 / (s * s)));
  const double norm = std::pow(std::numbers::pi * s * s, -0.25);
  Eigen::VectorXd phi;
  double sum = 0.0;
  for (int i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i] / lambda;
    numerics::hermite_functions(k, x, phi);
    const double psi = norm * std::exp(-x * x / (2.0 * s * s));
    sum += rule.weights[i] * phi[k] * psi;
  }
  return sum / lambda;
}

}  // namespace

double overlap_amplitude_quadrature(int k, double s) {
  if (k < 0) throw std::domain_error("overlap_amplitude_quadrature: k must be nonnegative");
  if (!(s > 0.0)) throw std::domain_error("overlap_amplitude_quadrature: s must be positive");
  if (k > kQuadratureKLimit)
    throw capability_error("overlap_amplitude_quadrature: k beyond stable recursion range");
  const double primary = amplitude_at_order(k, s, 2 * k + 40);
  const double confirm = amplitude_at_order(k, s, 2 * k + 80);
  if (std::abs(primary - confirm) > 1e-9)
    throw capability_error("overlap_amplitude_quadrature: quadrature orders disagree");
  return primary;
}

double fock_overlap_quadrature(int k, double s) {
  const double amplitude = overlap_amplitude_quadrature(k, s);
  return amplitude * amplitude;
}

}  // namespace g2d::gaussian
