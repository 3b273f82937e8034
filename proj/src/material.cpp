#include "polydem/material.hpp"

namespace polydem {

namespace {

inline double kron(int a, int b) { return a == b ? 1.0 : 0.0; }

}  // namespace

Mat9 ElasticTensor::matrix9() const {
  Mat9 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          c(3 * i + j, 3 * k + l) =
              lambda * kron(i, j) * kron(k, l) + mu * (kron(i, k) * kron(j, l) + kron(i, l) * kron(j, k));
  return c;
}

Eigen::MatrixXd ElasticTensor::matrix(int d) const {
  Eigen::MatrixXd c(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          c(d * i + j, d * k + l) =
              lambda * kron(i, j) * kron(k, l) + mu * (kron(i, k) * kron(j, l) + kron(i, l) * kron(j, k));
  return c;
}

Mat9 sym4_matrix9() {
  Mat9 s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          s(3 * i + j, 3 * k + l) = 0.5 * (kron(i, k) * kron(j, l) + kron(i, l) * kron(j, k));
  return s;
}

Mat9 dev4_matrix9() {
  Vec9 id = vec9(Mat3::Identity());
  return sym4_matrix9() - (1.0 / 3.0) * id * id.transpose();
}

Eigen::MatrixXd restrict_tangent(const Mat9& c, int d) {
  if (d == 3) return c;
  Eigen::MatrixXd r(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) r(d * i + j, d * k + l) = c(3 * i + j, 3 * k + l);
  return r;
}

}  // namespace polydem
