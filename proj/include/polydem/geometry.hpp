#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace polydem {

// All positions are stored as 3-vectors; 2D meshes keep z = 0 and carry
// dim = 2 through the geometric formulas.
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);
double tet_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Measure of the simplex spanned by d+1 points (length/area/volume).
double simplex_measure(int dim, std::span<const Vec3> pts);

/// Longest edge of a point set.
double max_edge(std::span<const Vec3> pts);

/// Radius of the sphere through the d+1 points of a simplex.
/// Returns +inf when the simplex is degenerate.
double circumradius(int dim, std::span<const Vec3> pts);

/// Barycentric coordinates of `target` with respect to a non-degenerate
/// simplex of d+1 points. Throws on a degenerate simplex.
std::vector<double> solve_barycentric(int dim, std::span<const Vec3> pts, const Vec3& target);

/// Non-throwing variant; returns false when the simplex is too flat.
bool try_barycentric(int dim, std::span<const Vec3> pts, const Vec3& target,
                     std::vector<double>& coeffs);

inline Mat3 sym(const Mat3& a) { return 0.5 * (a + a.transpose()); }
inline Mat3 dev(const Mat3& a) { return a - (a.trace() / 3.0) * Mat3::Identity(); }
inline double norm_f(const Mat3& a) { return a.norm(); }

}  // namespace polydem
