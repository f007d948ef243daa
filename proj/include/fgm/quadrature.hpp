#pragma once

#include <array>
#include <vector>

namespace fgm {

struct GaussRule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [-1, 1].
GaussRule1D gauss_legendre(int n);

/// Triangle rule in barycentric coordinates; weights sum to one and are
/// scaled by the triangle area at the point of use.
struct TriangleRule {
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;
  int degree = 0;  // total polynomial degree integrated exactly
};

enum class TriangleRuleKind {
  three_point,      // degree 2
  collapsed_four,   // 2x2 Gauss collapsed onto the triangle, degree 2
  six_point,        // degree 4
  thirteen_point,   // degree 7
};

TriangleRule triangle_rule(TriangleRuleKind kind);

/// Applies `rule` on each of the 4^levels congruent children of the
/// reference triangle.
TriangleRule refine_triangle_rule(const TriangleRule& rule, int levels);

}  // namespace fgm
