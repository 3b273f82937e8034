#pragma once

#include "polydem/material.hpp"

namespace polydem::analytic {

/// 2D manufactured elasticity solution u = a/2 (x^2+y^2)(e_x+e_y) on the
/// unit square centred at the origin, with the matching volumetric load.
struct Manufactured2d {
  Material mat;
  double a = 0.8;

  Manufactured2d() {
    mat.E = 70e3;
    mat.nu = 0.3;
    mat.rho = 1;
    mat.sigma0 = 1e30;  // never yields
  }
  Vec3 displacement(const Vec3& x) const {
    double s = 0.5 * a * (x.x() * x.x() + x.y() * x.y());
    return {s, s, 0};
  }
  Vec3 load(const Vec3&) const {
    double f = -a * (mat.lambda() + 3 * mat.mu());
    return {f, f, 0};
  }
};

/// Quasi-static traction of a beam with linear hardening: bilinear
/// stress-strain law with slopes E then Et and the knee at sigma0.
struct TractionBeam {
  Material mat;
  double length = 1.0;
  double section_side = 0.12649110640673518;  // sqrt(0.016)

  TractionBeam() {
    mat.E = 70e3;
    mat.nu = 0.3;
    mat.rho = 1;
    mat.sigma0 = 250;
    mat.hardening = Hardening::Linear;
    mat.Et = 14e3;
  }
  double yield_strain() const { return mat.sigma0 / mat.E; }
  double yield_displacement() const { return yield_strain() * length; }
  double stress(double strain) const {
    double ey = yield_strain();
    return strain <= ey ? mat.E * strain : mat.sigma0 + mat.Et * (strain - ey);
  }
};

/// Quasi-static torsion of a circular beam, perfect plasticity.
struct TorsionBeam {
  Material mat;
  double length = 0.2;
  double radius = 0.05;

  TorsionBeam() {
    mat.E = 70e3;
    mat.nu = 0.3;
    mat.rho = 1;
    mat.sigma0 = 250;
    mat.hardening = Hardening::Perfect;
  }
  double yield_angle() const {
    return mat.sigma0 * length / (mat.mu() * radius * std::sqrt(3.0));
  }
  /// u = alpha r (z/L) e_theta in Cartesian components.
  Vec3 displacement(const Vec3& x, double alpha) const {
    double f = alpha * x.z() / length;
    return {-f * x.y(), f * x.x(), 0};
  }
  double shear(double r, double alpha) const {
    double ry = elastic_core(alpha);
    return r <= ry ? mat.mu() * alpha * r / length : mat.sigma0 / std::sqrt(3.0);
  }
  double elastic_core(double alpha) const {
    return alpha <= yield_angle() ? radius : radius * yield_angle() / alpha;
  }
  Mat3 stress(const Vec3& x, double alpha) const {
    double r = std::hypot(x.x(), x.y());
    if (r == 0) return Mat3::Zero();
    Vec3 etheta(-x.y() / r, x.x() / r, 0);
    Vec3 ez(0, 0, 1);
    double tau = shear(r, alpha);
    return tau * (etheta * ez.transpose() + ez * etheta.transpose());
  }
  double torque(double alpha) const {
    double ry = elastic_core(alpha);
    double tau_y = mat.sigma0 / std::sqrt(3.0);
    // 2 pi [ integral_0^ry (mu alpha r/L) r^2 dr + integral_ry^R tau_y r^2 dr ]
    return 2 * M_PI * (mat.mu() * alpha / length * std::pow(ry, 4) / 4 +
                       tau_y * (std::pow(radius, 3) - std::pow(ry, 3)) / 3);
  }
};

/// Inner swelling of an infinite cylinder (plane strain), linear hardening.
struct CylinderSwelling {
  Material mat;
  double ri = 1.0;
  double ro = 1.3;

  CylinderSwelling() {
    mat.E = 70e3;
    mat.nu = 0.3;
    mat.rho = 1;
    mat.sigma0 = 250;
    mat.hardening = Hardening::Linear;
    mat.Et = 700;  // E/100
  }
  double limit_pressure() const {
    return 2.0 / std::sqrt(3.0) * mat.sigma0 * std::log(ro / ri);
  }
  /// Lame thick-wall solution at unit inner pressure (elastic regime).
  Mat3 elastic_stress_unit(double r) const {
    double A = ri * ri / (ro * ro - ri * ri);
    double B = A * ro * ro;
    Mat3 s = Mat3::Zero();
    s(0, 0) = A - B / (r * r);               // sigma_rr
    s(1, 1) = A + B / (r * r);               // sigma_theta
    s(2, 2) = mat.nu * (s(0, 0) + s(1, 1));  // plane strain
    return s;
  }
  /// Pressure at which the inner fibre first reaches the yield surface.
  double first_yield_pressure() const;
};

}  // namespace polydem::analytic
