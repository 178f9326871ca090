#include "g2d/symplectic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace g2d::symplectic {

namespace {
constexpr double kDetTolerance = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

SymplecticMatrix::SymplecticMatrix(double a_in, double b_in, double c_in, double d_in)
    : a(a_in), b(b_in), c(c_in), d(d_in) {
  if (std::abs(det() - 1.0) > kDetTolerance)
    throw std::domain_error("SymplecticMatrix: determinant must be 1");
}

SymplecticMatrix SymplecticMatrix::from_matrix(const Eigen::Matrix2d& m) {
  return SymplecticMatrix(m(0, 0), m(0, 1), m(1, 0), m(1, 1));
}

Eigen::Matrix2d SymplecticMatrix::matrix() const {
  Eigen::Matrix2d m;
  m << a, b, c, d;
  return m;
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
  return SymplecticMatrix(a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                          c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d);
}

ParabolicElement::ParabolicElement(double u_in, double v_in) : u(u_in), v(v_in) {
  if (!(u > 0.0)) throw std::domain_error("ParabolicElement: u must be positive");
}

SymplecticMatrix ParabolicElement::as_matrix() const {
  return shear(v) * squeeze(u);
}

ShapeParams::ShapeParams(double s_in, double theta_in) : s(s_in), theta(reduce_angle_pi(theta_in)) {
  if (!(s > 0.0)) throw std::domain_error("ShapeParams: s must be positive");
}

EnergyShape::EnergyShape(double energy_in, double theta_in)
    : energy(energy_in), theta(reduce_angle_pi(theta_in)) {
  if (energy < 0.5) throw std::domain_error("EnergyShape: energy must be >= 1/2");
}

SymplecticMatrix rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return SymplecticMatrix(c, s, -s, c);
}

SymplecticMatrix squeeze(double u) {
  if (!(u > 0.0)) throw std::domain_error("squeeze: u must be positive");
  const double r = std::sqrt(u);
  return SymplecticMatrix(1.0 / r, 0.0, 0.0, r);
}

SymplecticMatrix shear(double v) {
  return SymplecticMatrix(1.0, 0.0, -v, 1.0);
}

ParabolicElement compose_parabolic(const ParabolicElement& lhs, const ParabolicElement& rhs) {
  return ParabolicElement(lhs.u * rhs.u, lhs.u * rhs.v + lhs.v);
}

IwasawaFactors iwasawa_decompose(const SymplecticMatrix& m) {
  // m = R(theta) * (squeeze * shear) with the triangular factor carrying a
  // positive diagonal; the rotation is read off the second column.
  const double u = m.b * m.b + m.d * m.d;
  if (!(u > 0.0)) throw std::domain_error("iwasawa_decompose: singular second column");
  IwasawaFactors f;
  f.theta = reduce_angle_2pi(std::atan2(m.b, m.d));
  f.u = u;
  f.v = -(m.a * m.b + m.c * m.d) / u;
  return f;
}

SymplecticMatrix iwasawa_reconstruct(const IwasawaFactors& f) {
  return rotation(f.theta) * squeeze(f.u) * shear(f.v);
}

double haar_density_uv(double u, double /*v*/) {
  if (!(u > 0.0)) throw std::domain_error("haar_density_uv: u must be positive");
  return 1.0 / (u * u);
}

ParabolicElement shape_to_uv(const ShapeParams& sp) {
  const double q = sp.s * sp.s;          // s^2
  const double c = std::cos(sp.theta);
  const double sn = std::sin(sp.theta);
  const double denom = q * q * c * c + sn * sn;
  const double u = q / denom;
  const double v = (q * q - 1.0) * sn * c / denom;
  return ParabolicElement(u, v);
}

double invariant_density_s_theta(double s) {
  if (!(s > 0.0)) throw std::domain_error("invariant_density_s_theta: s must be positive");
  // 2|1-s^4|/s^3, factored so the value stays accurate near s = 1.
  return 2.0 * std::abs((s - 1.0) * (s + 1.0) * (s * s + 1.0)) / (s * s * s);
}

double invariant_density_energy() { return 4.0; }

double energy_from_s(double s) {
  if (!(s > 0.0)) throw std::domain_error("energy_from_s: s must be positive");
  return 0.25 * (s * s + 1.0 / (s * s));
}

double denergy_ds(double s) {
  if (!(s > 0.0)) throw std::domain_error("denergy_ds: s must be positive");
  return (s - 1.0) * (s + 1.0) * (s * s + 1.0) / (2.0 * s * s * s);
}

double s_from_energy(double energy, EnergyBranch branch) {
  if (energy < 0.5) throw std::domain_error("s_from_energy: energy must be >= 1/2");
  const double disc = std::sqrt(std::max(4.0 * energy * energy - 1.0, 0.0));
  const double s_plus = std::sqrt(2.0 * energy + disc);
  // The minus branch 2E - disc cancels badly for large E; use the exact
  // reciprocal relation instead.
  return branch == EnergyBranch::plus ? s_plus : 1.0 / s_plus;
}

double reduce_angle_2pi(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t == kTwoPi) t = 0.0;
  return t;
}

double reduce_angle_pi(double theta) {
  double t = std::fmod(theta, std::numbers::pi);
  if (t < 0.0) t += std::numbers::pi;
  if (t == std::numbers::pi) t = 0.0;
  return t;
}

}  // namespace g2d::symplectic
