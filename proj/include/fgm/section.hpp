#pragma once

#include "fgm/material.hpp"

#include <Eigen/Core>

#include <array>

namespace fgm {

struct ShearCorrection {
  double factor = 5.0 / 6.0;

  void validate() const;
};

/// Plane-stress reduced stiffness of an isotropic point.
struct ReducedStiffness {
  double Q11 = 0.0;
  double Q12 = 0.0;
  double Q22 = 0.0;
  double Q44 = 0.0;
  double Q55 = 0.0;
  double Q66 = 0.0;
};

ReducedStiffness reduced_stiffness(double E, double nu);

/// Through-thickness resultants. Strain vectors are ordered (xx, yy, xy)
/// with engineering shear; shear strains are (xz, yz).
struct SectionProperties {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d B = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  Eigen::Matrix2d Es = Eigen::Matrix2d::Zero();
  Eigen::Vector3d Nth = Eigen::Vector3d::Zero();
  Eigen::Vector3d Mth = Eigen::Vector3d::Zero();
  double p = 0.0;  // kg/m^2
  double I = 0.0;  // kg
  double h = 0.0;

  /// 8 x 8 generalized constitutive matrix [[A, B, 0], [B, D, 0], [0, 0, Es]].
  Eigen::Matrix<double, 8, 8> generalized() const;
};

/// Integrates the graded section with a fixed 20-point Gauss-Legendre rule.
SectionProperties integrate_section(const MaterialSystem& sys, double h, const ThermalBC& bc,
                                    const ShearCorrection& sc = {});

/// Same integrals with a chosen number of Gauss points.
SectionProperties integrate_section(const MaterialSystem& sys, double h, const ThermalBC& bc,
                                    const ShearCorrection& sc, int gauss_points);

}  // namespace fgm
