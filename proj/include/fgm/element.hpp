#pragma once

#include "fgm/classify.hpp"
#include "fgm/errors.hpp"
#include "fgm/quadrature.hpp"
#include "fgm/section.hpp"

#include <Eigen/Core>

#include <array>
#include <vector>

namespace fgm {

constexpr int kFieldsPerNode = 5;  // u0, v0, w0, theta_x, theta_y

struct Q4Shape {
  std::array<double, 4> N{};
  std::array<double, 4> dxi{};
  std::array<double, 4> deta{};
};

Q4Shape q4_shape(double xi, double eta);

/// Integration rules per element category.
struct QuadratureSpec {
  int non_enriched = 2;    // n x n Gauss
  int tip_blending = 4;    // n x n Gauss
  int split_blending = 2;  // n x n Gauss
  TriangleRule tip = triangle_rule(TriangleRuleKind::thirteen_point);
  TriangleRule split = triangle_rule(TriangleRuleKind::three_point);
  TriangleRule split_tip_blending = triangle_rule(TriangleRuleKind::collapsed_four);
  TriangleRule cut_by_void = triangle_rule(TriangleRuleKind::six_point);

  /// Every Gauss order doubled and every triangle rule applied on four
  /// children of each sub-triangle.
  QuadratureSpec doubled() const;
};

/// One enrichment function of the element; it carries all five fields.
struct ElementFunction {
  enum class Kind { standard, heaviside, tip };
  int node = 0;  // local corner 0..3
  Kind kind = Kind::standard;
  int crack = -1;
  int branch = 0;  // 0..3 for tip functions
};

/// Element dofs are function-major: dof 5 f + field.
struct ElementDofLayout {
  std::vector<ElementFunction> functions;

  int num_dofs() const { return kFieldsPerNode * static_cast<int>(functions.size()); }
};

/// Everything the element kernels need about one element.
struct ElementGeometry {
  std::array<Vec2, 4> corners;
  ElementCategory category = ElementCategory::non_enriched;
  const std::vector<SubTriangle>* partition = nullptr;  // null or empty: whole element
  const DiscontinuitySet* discontinuities = nullptr;
  ElementDofLayout layout;
};

/// Four standard functions, no enrichment.
ElementGeometry standard_element(const std::array<Vec2, 4>& corners);

ElementGeometry element_geometry(const Mesh& mesh, const EnrichmentPlan& plan, std::size_t e);

struct IntegrationPoint {
  double xi = 0.0;
  double eta = 0.0;
  Vec2 x = Vec2::Zero();
  double weight = 0.0;           // physical area weight
  Vec2 region = Vec2::Zero();    // interior point of the sub-region holding x
};

std::vector<IntegrationPoint> integration_points(const ElementGeometry& g,
                                                 const QuadratureSpec& q);

/// Parent coordinates of a physical point by Newton iteration on the
/// bilinear map.
Eigen::Vector2d inverse_map(const std::array<Vec2, 4>& corners, const Vec2& x);

/// Assumed transverse shear strain of a standard (unenriched) element at
/// (xi, eta). `dofs` holds the 20 nodal values node-major (u0, v0, w0, tx, ty).
Eigen::Vector2d substitute_shear_strain(const std::array<Vec2, 4>& corners, double xi, double eta,
                                        const Eigen::Matrix<double, 20, 1>& dofs);

struct ElementMatrices {
  Eigen::MatrixXd K;
  Eigen::MatrixXd M;
  Eigen::MatrixXd KG;
  Eigen::VectorXd F;  // thermal load
};

ElementMatrices element_matrices(const ElementGeometry& g, const SectionProperties& section,
                                 const QuadratureSpec& q = {});

Eigen::MatrixXd element_stiffness(const ElementGeometry& g, const SectionProperties& section,
                                  const QuadratureSpec& q = {});

Eigen::MatrixXd element_mass(const ElementGeometry& g, double p, double I,
                             const QuadratureSpec& q = {});

/// In-plane prestress is -Nth.
Eigen::MatrixXd element_geometric_stiffness(const ElementGeometry& g, const Eigen::Vector3d& Nth,
                                            double h, const QuadratureSpec& q = {});

Eigen::VectorXd element_thermal_load(const ElementGeometry& g, const SectionProperties& section,
                                     const QuadratureSpec& q = {});

}  // namespace fgm
