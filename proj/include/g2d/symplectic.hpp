#pragma once

#include <Eigen/Dense>

namespace g2d::symplectic {

/// 2x2 real unit-determinant transformation of phase-space vectors (x, p)^T.
struct SymplecticMatrix {
  double a, b, c, d;  // rows (a b; c d)

  SymplecticMatrix(double a, double b, double c, double d);
  static SymplecticMatrix from_matrix(const Eigen::Matrix2d& m);

  Eigen::Matrix2d matrix() const;
  double det() const { return a * d - b * c; }

  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;
};

/// Element S(u, v) = V(v) U(u) of the squeeze-shear (parabolic) subgroup.
struct ParabolicElement {
  double u;  // squeeze parameter, > 0
  double v;  // shear parameter

  ParabolicElement(double u, double v);
  SymplecticMatrix as_matrix() const;
};

/// Squeezed-vacuum shape: quadrature stretch factor s > 0 and major-axis
/// angle theta, reduced mod pi (ellipse orientation is pi-periodic).
struct ShapeParams {
  double s;
  double theta;
  ShapeParams(double s, double theta);
};

/// Shape in (mean energy, angle) coordinates; energy >= 1/2, = 1/2 at s = 1.
struct EnergyShape {
  double energy;
  double theta;
  EnergyShape(double energy, double theta);
};

SymplecticMatrix rotation(double theta);
SymplecticMatrix squeeze(double u);
SymplecticMatrix shear(double v);

ParabolicElement compose_parabolic(const ParabolicElement& lhs, const ParabolicElement& rhs);

struct IwasawaFactors {
  double theta;  // in [0, 2*pi)
  double u;      // > 0
  double v;
};

/// Factor m = rotation(theta) * squeeze(u) * shear(v) (rotation extracted
/// first, Gram-Schmidt on the columns).
IwasawaFactors iwasawa_decompose(const SymplecticMatrix& m);

SymplecticMatrix iwasawa_reconstruct(const IwasawaFactors& f);

/// Left-invariant density 1/u^2 on the parabolic subgroup, normalized to 1
/// at the identity element.
double haar_density_uv(double u, double v);

/// (u, v) coordinates of the parabolic element carrying the vacuum to the
/// shape (s, theta). The chart is degenerate at s = 1, where every theta
/// maps to the identity (1, 0).
ParabolicElement shape_to_uv(const ShapeParams& sp);

/// Invariant density in (s, theta) coordinates, 2|1-s^4|/s^3.
double invariant_density_s_theta(double s);
/// The same density in (energy, theta) coordinates, where it is constant.
double invariant_density_energy();

double energy_from_s(double s);
/// Analytic Jacobian dE/ds = (s^4-1)/(2 s^3), in cancellation-free form.
double denergy_ds(double s);

enum class EnergyBranch { plus, minus };  // s = sqrt(2E +- sqrt(4E^2-1))
double s_from_energy(double energy, EnergyBranch branch);

double reduce_angle_2pi(double theta);
double reduce_angle_pi(double theta);

}  // namespace g2d::symplectic
