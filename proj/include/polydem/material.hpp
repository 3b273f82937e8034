#pragma once

#include "polydem/geometry.hpp"

#include <Eigen/Dense>

namespace polydem {

using Mat9 = Eigen::Matrix<double, 9, 9>;
using Vec9 = Eigen::Matrix<double, 9, 1>;

// Row-major tensor vectorization: slot 3*i+j holds component (i,j).
inline Vec9 vec9(const Mat3& a) {
  Vec9 v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v[3 * i + j] = a(i, j);
  return v;
}
inline Mat3 unvec9(const Vec9& v) {
  Mat3 a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = v[3 * i + j];
  return a;
}

enum class Hardening { Perfect, Linear };

struct Material {
  double E = 0;        // Young modulus (Pa)
  double nu = 0;       // Poisson ratio
  double rho = 1;      // density (kg/m^3)
  double sigma0 = 0;   // initial yield stress (Pa)
  Hardening hardening = Hardening::Perfect;
  double Et = 0;       // tangent plastic modulus for linear hardening

  double lambda() const { return E * nu / ((1 + nu) * (1 - 2 * nu)); }
  double mu() const { return E / (2 * (1 + nu)); }
  /// Isotropic hardening modulus H with R(p) = H p.
  double H() const { return hardening == Hardening::Linear ? E * Et / (E - Et) : 0.0; }

  void validate() const {
    if (E <= 0) fail("material: E must be positive");
    if (nu <= -1 || nu >= 0.5) fail("material: nu must lie in (-1, 0.5)");
    if (rho <= 0) fail("material: rho must be positive");
    if (sigma0 < 0) fail("material: sigma0 must be non-negative");
    if (hardening == Hardening::Linear && (Et < 0 || Et >= E))
      fail("material: Et must lie in [0, E)");
  }
};

/// sigma = lambda tr(e) I + 2 mu e on symmetric tensors.
struct ElasticTensor {
  double lambda = 0, mu = 0;

  static ElasticTensor from_lame(double lambda, double mu) { return {lambda, mu}; }
  static ElasticTensor from_material(const Material& m) { return {m.lambda(), m.mu()}; }

  Mat3 apply(const Mat3& eps) const {
    return lambda * eps.trace() * Mat3::Identity() + 2 * mu * eps;
  }

  /// d^2 x d^2 matrix acting on row-major vectorized tensors, restricted to
  /// the in-plane components for d = 2 (plane strain).
  Eigen::MatrixXd matrix(int d) const;
  Mat9 matrix9() const;
};

/// Fourth-order identity on symmetric tensors, tensorized identity and the
/// deviatoric projector, all in the 9-vector representation.
Mat9 sym4_matrix9();
Mat9 dev4_matrix9();

/// In-plane restriction of a fourth-order tensor for 2D plane-strain assembly.
Eigen::MatrixXd restrict_tangent(const Mat9& c, int d);

}  // namespace polydem
