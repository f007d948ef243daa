#include "fgm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <type_traits>

namespace fgm {

double circle_level_set(const Vec2& x, const Circle& c) { return (x - c.center).norm() - c.radius; }

double ellipse_level_set(const Vec2& x, const Ellipse& el) {
  const double c = std::cos(el.orientation);
  const double s = std::sin(el.orientation);
  const double dx = x.x() - el.center.x();
  const double dy = x.y() - el.center.y();
  const double d2 = el.semi_major * el.semi_major;
  const double e2 = el.semi_minor * el.semi_minor;
  const double a1 = c * c / d2 + s * s / e2;
  const double a2 = 2.0 * s * c * (1.0 / d2 - 1.0 / e2);
  const double a3 = s * s / d2 + c * c / e2;
  const double q = a1 * dx * dx + a2 * dx * dy + a3 * dy * dy;
  return std::sqrt(std::max(q, 0.0)) - 1.0;
}

double level_set(const Vec2& x, const Cutout& cutout) {
  return std::visit(
      [&](const auto& shape) -> double {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Circle>)
          return circle_level_set(x, shape);
        else
          return ellipse_level_set(x, shape);
      },
      cutout);
}

Vec2 cutout_center(const Cutout& cutout) {
  return std::visit([](const auto& shape) { return shape.center; }, cutout);
}

Vec2 rim_point(const Cutout& cutout, double angle) {
  const Vec2 u(std::cos(angle), std::sin(angle));
  if (const auto* c = std::get_if<Circle>(&cutout)) return c->center + c->radius * u;
  const auto& el = std::get<Ellipse>(cutout);
  // phi(center + t u) = t sqrt(q(u)) - 1, so the rim sits at t = 1 / sqrt(q(u)).
  const double q1 = ellipse_level_set(el.center + u, el) + 1.0;
  return el.center + u / q1;
}

void validate_cutout(const Cutout& cutout) {
  if (const auto* c = std::get_if<Circle>(&cutout)) {
    if (!(c->radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
    return;
  }
  const auto& el = std::get<Ellipse>(cutout);
  if (!(el.semi_minor > 0.0) || el.semi_major < el.semi_minor)
    throw std::invalid_argument("ellipse needs semi_major >= semi_minor > 0");
}

Vec2 Crack::tip_direction() const {
  if (path.size() < 2) throw std::invalid_argument("crack path needs at least two points");
  return (path[path.size() - 1] - path[path.size() - 2]).normalized();
}

double Crack::length() const {
  double len = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) len += (path[i] - path[i - 1]).norm();
  return len;
}

namespace {

// Normal offset of x from the nearest crack segment (unnormalised normal).
double nearest_segment_offset(const Vec2& x, const Crack& crack) {
  double best = std::numeric_limits<double>::infinity();
  double offset = 0.0;
  for (std::size_t i = 1; i < crack.path.size(); ++i) {
    const Vec2& p = crack.path[i - 1];
    const Vec2 t = crack.path[i] - p;
    const double s = std::clamp((x - p).dot(t) / t.squaredNorm(), 0.0, 1.0);
    const double dist = (x - (p + s * t)).norm();
    if (dist < best) {
      best = dist;
      offset = (x - p).dot(Vec2(-t.y(), t.x()));
    }
  }
  return offset;
}

}  // namespace

CrackLocal crack_local_coordinates(const Vec2& x, const Crack& crack) {
  const Vec2 e1 = crack.tip_direction();
  const Vec2 e2(-e1.y(), e1.x());
  const Vec2 d = x - crack.tip();
  const double xl = d.dot(e1);
  const double yl = d.dot(e2);
  CrackLocal out;
  out.r = std::hypot(xl, yl);
  out.theta = std::atan2(yl, xl);
  const double offset = nearest_segment_offset(x, crack);
  out.on_line = (offset == 0.0);
  out.side = offset >= 0.0 ? 1 : -1;
  return out;
}

int crack_side(const Vec2& x, const Crack& crack) {
  return nearest_segment_offset(x, crack) >= 0.0 ? 1 : -1;
}

std::array<double, 4> branch_functions(double r, double theta) {
  const double sr = std::sqrt(r);
  const double sh = std::sin(0.5 * theta);
  const double ch = std::cos(0.5 * theta);
  const double st = std::sin(theta);
  return {sr * sh, sr * ch, sr * st * sh, sr * st * ch};
}

BranchValues branch_functions_at(const Vec2& x, const Crack& crack) {
  const Vec2 e1 = crack.tip_direction();
  const Vec2 e2(-e1.y(), e1.x());
  const Vec2 d = x - crack.tip();
  const double xl = d.dot(e1);
  const double yl = d.dot(e2);
  const double r = std::hypot(xl, yl);
  const double theta = std::atan2(yl, xl);

  BranchValues out;
  out.value = branch_functions(r, theta);
  if (r == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    for (auto& g : out.gradient) g = Vec2(inf, inf);
    return out;
  }
  const double sr = std::sqrt(r);
  const double sh = std::sin(0.5 * theta);
  const double ch = std::cos(0.5 * theta);
  const double st = std::sin(theta);
  const double ct = std::cos(theta);
  // d/dr and d/dtheta of each branch function
  const std::array<double, 4> dr = {sh / (2 * sr), ch / (2 * sr), st * sh / (2 * sr),
                                    st * ch / (2 * sr)};
  const std::array<double, 4> dt = {0.5 * sr * ch, -0.5 * sr * sh,
                                    sr * (ct * sh + 0.5 * st * ch),
                                    sr * (ct * ch - 0.5 * st * sh)};
  for (int a = 0; a < 4; ++a) {
    const double gx = ct * dr[a] - st / r * dt[a];
    const double gy = st * dr[a] + ct / r * dt[a];
    out.gradient[a] = gx * e1 + gy * e2;
  }
  return out;
}

}  // namespace fgm
