#include "polydem/plasticity.hpp"

#include <cmath>

namespace polydem {

namespace {

constexpr double kSqrt32 = 1.2247448713915890;  // sqrt(3/2)

struct Trial {
  Mat3 sigma;
  Mat3 s;       // deviator
  double snorm; // |dev|
  double q;     // sqrt(3/2)|dev|
  double phi;
};

Trial trial_state(const Mat3& eps_p_old, double p_old, const Mat3& eps_new, const Material& mat) {
  Trial t;
  t.sigma = stress(eps_new, eps_p_old, mat);
  t.s = dev(t.sigma);
  t.snorm = t.s.norm();
  t.q = kSqrt32 * t.snorm;
  t.phi = t.q - (mat.sigma0 + mat.H() * p_old);
  return t;
}

}  // namespace

double yield_function(const Mat3& sigma, double p, const Material& mat) {
  return kSqrt32 * dev(sigma).norm() - (mat.sigma0 + mat.H() * p);
}

Mat3 stress(const Mat3& eps, const Mat3& eps_p, const Material& mat) {
  Mat3 e = eps - eps_p;
  return mat.lambda() * e.trace() * Mat3::Identity() + 2 * mat.mu() * e;
}

PlasticUpdate plas_imp(const Mat3& eps_p_old, double p_old, const Mat3& /*eps_old*/,
                       const Mat3& eps_new, const Material& mat) {
  const double mu = mat.mu();
  const double H = mat.H();
  const Mat9 c_el = ElasticTensor::from_material(mat).matrix9();

  Trial t = trial_state(eps_p_old, p_old, eps_new, mat);
  if (t.phi <= 1e-12 * mat.sigma0)
    return {eps_p_old, p_old, c_el, t.sigma};

  if (t.snorm == 0) fail("plas_imp: zero deviator with positive trial yield");
  Mat3 n = t.s / t.snorm;
  double dp = t.phi / (3 * mu + H);
  Mat3 deps_p = dp * kSqrt32 * n;

  PlasticUpdate out;
  out.eps_p = eps_p_old + deps_p;
  out.p = p_old + dp;
  out.sigma = t.sigma - 2 * mu * deps_p;

  // Consistent tangent of the return map (validated against the
  // finite-difference property in the test suite).
  Vec9 nv = vec9(n);
  out.tangent = c_el - (6 * mu * mu / (3 * mu + H)) * nv * nv.transpose() -
                (6 * mu * mu * dp / t.q) * (dev4_matrix9() - nv * nv.transpose());
  return out;
}

std::pair<Mat3, double> plas_exp(const Mat3& eps_p_old, double p_old, const Mat3& eps_new,
                                 const Material& mat) {
  const double mu = mat.mu();
  const double H = mat.H();
  Trial t = trial_state(eps_p_old, p_old, eps_new, mat);
  if (t.phi <= 1e-12 * mat.sigma0) return {eps_p_old, p_old};
  if (t.snorm == 0) fail("plas_exp: zero deviator with positive trial yield");
  Mat3 n = t.s / t.snorm;  // flow direction at the trial stress
  double dp = t.phi / (3 * mu + H);
  return {eps_p_old + dp * kSqrt32 * n, p_old + dp};
}

}  // namespace polydem
