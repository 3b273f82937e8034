#include "polydem/analytic.hpp"

#include "polydem/plasticity.hpp"

namespace polydem::analytic {

double CylinderSwelling::first_yield_pressure() const {
  // Stresses are linear in the pressure; the von Mises stress is largest at
  // the inner fibre.
  Mat3 s = elastic_stress_unit(ri);
  double q = std::sqrt(1.5) * dev(s).norm();
  return mat.sigma0 / q;
}

}  // namespace polydem::analytic
