#include "polydem/geometry.hpp"

#include <cmath>
#include <limits>

namespace polydem {

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return std::abs((b - a).cross(c - a).dot(d - a)) / 6.0;
}

double simplex_measure(int dim, std::span<const Vec3> pts) {
  if ((int)pts.size() != dim + 1) fail("simplex_measure: expected d+1 points");
  if (dim == 2) return triangle_area(pts[0], pts[1], pts[2]);
  return tet_volume(pts[0], pts[1], pts[2], pts[3]);
}

double max_edge(std::span<const Vec3> pts) {
  double m = 0;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) m = std::max(m, (pts[i] - pts[j]).norm());
  return m;
}

double circumradius(int dim, std::span<const Vec3> pts) {
  // Center c solves 2 (p_i - p_0) . c = |p_i|^2 - |p_0|^2 for i = 1..d.
  const double inf = std::numeric_limits<double>::infinity();
  const double h = max_edge(pts);
  if (h == 0) return inf;
  if (simplex_measure(dim, pts) < 1e-12 * std::pow(h, dim)) return inf;
  Eigen::MatrixXd A(dim, dim);
  Eigen::VectorXd rhs(dim);
  for (int i = 1; i <= dim; ++i) {
    Vec3 e = pts[i] - pts[0];
    for (int j = 0; j < dim; ++j) A(i - 1, j) = 2 * e[j];
    rhs(i - 1) = pts[i].head(dim).squaredNorm() - pts[0].head(dim).squaredNorm();
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  Eigen::VectorXd c = lu.solve(rhs);
  if (!c.allFinite()) return inf;
  Vec3 center = Vec3::Zero();
  center.head(dim) = c;
  return (center - pts[0]).norm();
}

bool try_barycentric(int dim, std::span<const Vec3> pts, const Vec3& target,
                     std::vector<double>& coeffs) {
  if ((int)pts.size() != dim + 1) fail("barycentric: expected d+1 points");
  const double h = max_edge(pts);
  if (h == 0 || simplex_measure(dim, pts) < 1e-12 * std::pow(h, dim)) return false;
  Eigen::MatrixXd A(dim + 1, dim + 1);
  Eigen::VectorXd rhs(dim + 1);
  for (int j = 0; j <= dim; ++j) A(0, j) = 1.0;
  rhs(0) = 1.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j <= dim; ++j) A(i + 1, j) = pts[j][i];
    rhs(i + 1) = target[i];
  }
  Eigen::VectorXd alpha = Eigen::FullPivLU<Eigen::MatrixXd>(A).solve(rhs);
  if (!alpha.allFinite()) return false;
  coeffs.assign(alpha.data(), alpha.data() + dim + 1);
  return true;
}

std::vector<double> solve_barycentric(int dim, std::span<const Vec3> pts, const Vec3& target) {
  std::vector<double> coeffs;
  if (!try_barycentric(dim, pts, target, coeffs))
    fail("solve_barycentric: degenerate simplex");
  return coeffs;
}

}  // namespace polydem
