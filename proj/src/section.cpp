#include "fgm/section.hpp"

#include "fgm/quadrature.hpp"

#include <stdexcept>

namespace fgm {

void ShearCorrection::validate() const {
  if (!(factor > 0.0 && factor <= 1.0))
    throw std::invalid_argument("shear correction factor must lie in (0, 1]");
}

ReducedStiffness reduced_stiffness(double E, double nu) {
  ReducedStiffness q;
  const double d = 1.0 - nu * nu;
  q.Q11 = E / d;
  q.Q22 = E / d;
  q.Q12 = nu * E / d;
  q.Q44 = q.Q55 = q.Q66 = E / (2.0 * (1.0 + nu));
  return q;
}

Eigen::Matrix<double, 8, 8> SectionProperties::generalized() const {
  Eigen::Matrix<double, 8, 8> C = Eigen::Matrix<double, 8, 8>::Zero();
  C.block<3, 3>(0, 0) = A;
  C.block<3, 3>(0, 3) = B;
  C.block<3, 3>(3, 0) = B;
  C.block<3, 3>(3, 3) = D;
  C.block<2, 2>(6, 6) = Es;
  return C;
}

SectionProperties integrate_section(const MaterialSystem& sys, double h, const ThermalBC& bc,
                                    const ShearCorrection& sc) {
  return integrate_section(sys, h, bc, sc, 20);
}

SectionProperties integrate_section(const MaterialSystem& sys, double h, const ThermalBC& bc,
                                    const ShearCorrection& sc, int gauss_points) {
  if (!(h > 0.0)) throw std::invalid_argument("plate thickness must be positive");
  sys.validate();
  bc.validate();
  sc.validate();
  const GaussRule1D rule = gauss_legendre(gauss_points);
  SectionProperties s;
  s.h = h;
  for (std::size_t i = 0; i < rule.points.size(); ++i) {
    const double z = 0.5 * h * rule.points[i];
    const double w = 0.5 * h * rule.weights[i];
    const PointProperties pt = graded_point_properties(sys, z, h, bc);
    const ReducedStiffness q = reduced_stiffness(pt.E, pt.nu);
    Eigen::Matrix3d Q;
    Q << q.Q11, q.Q12, 0.0, q.Q12, q.Q22, 0.0, 0.0, 0.0, q.Q66;
    s.A += w * Q;
    s.B += w * z * Q;
    s.D += w * z * z * Q;
    s.Es(0, 0) += w * sc.factor * q.Q55;
    s.Es(1, 1) += w * sc.factor * q.Q44;
    // thermal strain alpha dT in both normal directions, none in shear
    const Eigen::Vector3d stress = Q * Eigen::Vector3d(1.0, 1.0, 0.0) * pt.alpha * (pt.T - bc.T0);
    s.Nth += w * stress;
    s.Mth += w * z * stress;
    s.p += w * pt.rho;
    s.I += w * z * z * pt.rho;
  }
  return s;
}

}  // namespace fgm
