#pragma once

#include <Eigen/Core>

#include <array>
#include <variant>
#include <vector>

namespace fgm {

using Vec2 = Eigen::Vector2d;

struct Circle {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;
};

/// Ellipse with semi-axes d >= e, major axis rotated by `orientation`
/// (radians, counter-clockwise from x).
struct Ellipse {
  Vec2 center = Vec2::Zero();
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double orientation = 0.0;
};

using Cutout = std::variant<Circle, Ellipse>;

/// Distance to the center minus the radius.
double circle_level_set(const Vec2& x, const Circle& c);

/// sqrt of the rotated-ellipse quadratic minus one; dimensionless.
double ellipse_level_set(const Vec2& x, const Ellipse& el);

/// Negative strictly inside, zero on the rim, positive outside.
double level_set(const Vec2& x, const Cutout& cutout);

Vec2 cutout_center(const Cutout& cutout);

/// Rim point hit by the ray from the center at `angle` (radians from x).
Vec2 rim_point(const Cutout& cutout, double angle);

void validate_cutout(const Cutout& cutout);

/// A crack is an open polyline; path.front() is the mouth and path.back() the
/// free tip. The mouth sits on a cutout rim (host_cutout >= 0) or on the
/// plate boundary (host_cutout == -1) and is never tip-enriched.
struct Crack {
  std::vector<Vec2> path;
  int host_cutout = -1;

  const Vec2& mouth() const { return path.front(); }
  const Vec2& tip() const { return path.back(); }
  /// Unit vector along the last segment, pointing out through the tip.
  Vec2 tip_direction() const;
  double length() const;
};

struct DiscontinuitySet {
  std::vector<Cutout> cutouts;
  std::vector<Crack> cracks;

  bool empty() const { return cutouts.empty() && cracks.empty(); }
};

/// Polar coordinates in the tip frame plus the side of the crack line.
struct CrackLocal {
  double r = 0.0;
  double theta = 0.0;
  int side = 1;
  bool on_line = false;  // side came from the tie-break
};

CrackLocal crack_local_coordinates(const Vec2& x, const Crack& crack);

/// +1 / -1 from the normal offset to the nearest segment; 0 offsets resolve
/// to +1.
int crack_side(const Vec2& x, const Crack& crack);

/// 1 on the positive side, 0 on the negative side.
inline double heaviside(int side) { return side > 0 ? 1.0 : 0.0; }

std::array<double, 4> branch_functions(double r, double theta);

struct BranchValues {
  std::array<double, 4> value{};
  std::array<Vec2, 4> gradient{};
};

/// Branch functions at a global point together with their global gradients.
/// The gradient is singular at the tip itself.
BranchValues branch_functions_at(const Vec2& x, const Crack& crack);

}  // namespace fgm
