#pragma once

#include "polydem/material.hpp"

namespace polydem {

/// Per-cell internal state. Tensors are always full 3x3: 2D problems run in
/// plane strain and the out-of-plane plastic flow matters for von Mises.
struct CellState {
  Mat3 eps_p = Mat3::Zero();  // remanent plastic strain, trace-free
  double p = 0;               // cumulated plastic strain
  Mat3 sigma = Mat3::Zero();
};

/// Von Mises yield function phi(sigma, p) = sqrt(3/2) |dev sigma| - (sigma0 + H p).
double yield_function(const Mat3& sigma, double p, const Material& mat);

/// sigma = lambda tr(eps - eps_p) I + 2 mu (eps - eps_p).
Mat3 stress(const Mat3& eps, const Mat3& eps_p, const Material& mat);

struct PlasticUpdate {
  Mat3 eps_p;
  double p;
  Mat9 tangent;  // consistent elastoplastic modulus
  Mat3 sigma;
};

/// Implicit radial return with consistent tangent. `eps_old` enters the
/// secant relation sigma_new = sigma_old + C_ep : (eps_new - eps_old) only;
/// the returned state depends on (eps_p_old, p_old, eps_new).
PlasticUpdate plas_imp(const Mat3& eps_p_old, double p_old, const Mat3& eps_old,
                       const Mat3& eps_new, const Material& mat);

/// Explicit update with the flow direction evaluated at the trial stress.
/// For von Mises with isotropic hardening it coincides with the implicit
/// update on (eps_p, p).
std::pair<Mat3, double> plas_exp(const Mat3& eps_p_old, double p_old, const Mat3& eps_new,
                                 const Material& mat);

}  // namespace polydem
