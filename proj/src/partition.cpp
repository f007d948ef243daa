#include "fgm/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fgm {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross(b - a, c - a);
}

SubTriangle make_ccw(const Vec2& a, const Vec2& b, const Vec2& c, bool material) {
  SubTriangle t;
  t.material = material;
  if (signed_area(a, b, c) >= 0.0)
    t.v = {a, b, c};
  else
    t.v = {a, c, b};
  return t;
}

// Parts of a convex polygon on either side of a linear function given by its
// vertex values. Vertices with a zero value belong to both parts.
void clip_polygon(const std::vector<Vec2>& poly, const std::vector<double>& f,
                  std::vector<Vec2>& pos, std::vector<Vec2>& neg) {
  pos.clear();
  neg.clear();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (f[i] >= 0.0) pos.push_back(poly[i]);
    if (f[i] <= 0.0) neg.push_back(poly[i]);
    if ((f[i] > 0.0 && f[j] < 0.0) || (f[i] < 0.0 && f[j] > 0.0)) {
      const double t = f[i] / (f[i] - f[j]);
      const Vec2 x = poly[i] + t * (poly[j] - poly[i]);
      pos.push_back(x);
      neg.push_back(x);
    }
  }
}

void fan(const std::vector<Vec2>& poly, bool material, double min_area,
         std::vector<SubTriangle>& out) {
  for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
    SubTriangle t = make_ccw(poly[0], poly[i], poly[i + 1], material);
    if (t.area() > min_area) out.push_back(t);
  }
}

std::vector<Vec2> as_polygon(const SubTriangle& t) { return {t.v[0], t.v[1], t.v[2]}; }

double point_segment_distance(const Vec2& x, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  const double s = len2 > 0.0 ? std::clamp((x - a).dot(d) / len2, 0.0, 1.0) : 0.0;
  return (x - (a + s * d)).norm();
}

}  // namespace

double SubTriangle::area() const { return std::abs(signed_area(v[0], v[1], v[2])); }

Vec2 SubTriangle::centroid() const { return (v[0] + v[1] + v[2]) / 3.0; }

bool clip_segment(const Vec2& p, const Vec2& q, const std::vector<Vec2>& polygon, double& t0,
                  double& t1) {
  t0 = 0.0;
  t1 = 1.0;
  const Vec2 d = q - p;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = polygon[i];
    const Vec2 e = polygon[(i + 1) % n] - a;
    // inside when cross(e, x - a) >= 0
    const double num = cross(e, p - a);
    const double den = cross(e, d);
    if (den == 0.0) {
      if (num < 0.0) return false;
      continue;
    }
    const double t = -num / den;
    if (den > 0.0)
      t0 = std::max(t0, t);
    else
      t1 = std::min(t1, t);
    if (t0 > t1) return false;
  }
  return true;
}

bool point_in_convex_polygon(const Vec2& x, const std::vector<Vec2>& polygon, double eps) {
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = polygon[i];
    const Vec2 e = polygon[(i + 1) % n] - a;
    if (cross(e, x - a) < -eps * e.norm()) return false;
  }
  return true;
}

double distance_to_polygon_boundary(const Vec2& x, const std::vector<Vec2>& polygon) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, point_segment_distance(x, polygon[i], polygon[(i + 1) % n]));
  return best;
}

std::vector<SubTriangle> base_triangulation(const std::array<Vec2, 4>& corners, int subdivisions) {
  if (subdivisions < 1) throw std::invalid_argument("subdivisions must be at least 1");
  auto map = [&](double xi, double eta) {
    const double n0 = 0.25 * (1 - xi) * (1 - eta);
    const double n1 = 0.25 * (1 + xi) * (1 - eta);
    const double n2 = 0.25 * (1 + xi) * (1 + eta);
    const double n3 = 0.25 * (1 - xi) * (1 + eta);
    return Vec2(n0 * corners[0] + n1 * corners[1] + n2 * corners[2] + n3 * corners[3]);
  };
  std::vector<SubTriangle> out;
  out.reserve(static_cast<std::size_t>(4 * subdivisions * subdivisions));
  const double step = 2.0 / subdivisions;
  for (int j = 0; j < subdivisions; ++j)
    for (int i = 0; i < subdivisions; ++i) {
      const double x0 = -1.0 + i * step;
      const double y0 = -1.0 + j * step;
      const std::array<Vec2, 4> q = {map(x0, y0), map(x0 + step, y0), map(x0 + step, y0 + step),
                                     map(x0, y0 + step)};
      const Vec2 c = map(x0 + 0.5 * step, y0 + 0.5 * step);
      for (int k = 0; k < 4; ++k) out.push_back(make_ccw(c, q[k], q[(k + 1) % 4], true));
    }
  return out;
}

std::vector<SubTriangle> split_along_segment(std::vector<SubTriangle> triangles, const Vec2& p,
                                             const Vec2& q, double eps) {
  std::vector<SubTriangle> done;
  std::vector<SubTriangle> work = std::move(triangles);
  const Vec2 d = q - p;
  const double len = d.norm();
  if (len <= eps) return work;

  std::size_t guard = 0;
  while (!work.empty()) {
    if (++guard > 100000) throw std::runtime_error("crack splitting did not terminate");
    SubTriangle tri = work.back();
    work.pop_back();
    const std::vector<Vec2> poly = as_polygon(tri);
    double t0 = 0.0;
    double t1 = 0.0;
    if (!clip_segment(p, q, poly, t0, t1) || (t1 - t0) * len <= eps) {
      done.push_back(tri);
      continue;
    }
    const Vec2 a = p + t0 * d;
    const Vec2 b = p + t1 * d;
    // Already running along an edge: nothing to split.
    bool along_edge = false;
    for (int i = 0; i < 3; ++i) {
      const Vec2& e0 = tri.v[i];
      const Vec2& e1 = tri.v[(i + 1) % 3];
      if (point_segment_distance(a, e0, e1) <= eps && point_segment_distance(b, e0, e1) <= eps)
        along_edge = true;
    }
    if (along_edge) {
      done.push_back(tri);
      continue;
    }
    const bool a_inside = distance_to_polygon_boundary(a, poly) > eps;
    const bool b_inside = distance_to_polygon_boundary(b, poly) > eps;
    if (a_inside || b_inside) {
      const Vec2 c = a_inside ? a : b;
      for (int i = 0; i < 3; ++i) {
        SubTriangle child = make_ccw(c, tri.v[i], tri.v[(i + 1) % 3], tri.material);
        if (child.area() > eps * eps) work.push_back(child);
      }
      continue;
    }
    std::vector<double> f(3);
    for (int i = 0; i < 3; ++i) {
      f[i] = cross(d, tri.v[i] - p) / len;
      if (std::abs(f[i]) <= eps) f[i] = 0.0;
    }
    std::vector<Vec2> pos;
    std::vector<Vec2> neg;
    clip_polygon(poly, f, pos, neg);
    fan(pos, tri.material, eps * eps, done);
    fan(neg, tri.material, eps * eps, done);
  }
  return done;
}

std::vector<SubTriangle> partition_cut_element(const std::array<Vec2, 4>& corners,
                                               const DiscontinuitySet& geometry,
                                               const PartitionOptions& options) {
  std::vector<SubTriangle> tris = base_triangulation(corners, options.subdivisions);
  double element_area = 0.0;
  for (const auto& t : tris) element_area += t.area();
  const double h = std::sqrt(element_area);
  const double min_area = options.sliver_fraction * element_area;
  const double eps = 1e-12 * h;

  for (const auto& cutout : geometry.cutouts) {
    std::vector<SubTriangle> next;
    next.reserve(tris.size());
    std::vector<Vec2> pos;
    std::vector<Vec2> neg;
    for (const auto& t : tris) {
      if (!t.material) {
        next.push_back(t);
        continue;
      }
      std::vector<double> f(3);
      bool any_pos = false;
      bool any_neg = false;
      for (int i = 0; i < 3; ++i) {
        f[i] = level_set(t.v[i], cutout);
        any_pos |= f[i] > 0.0;
        any_neg |= f[i] < 0.0;
      }
      if (!any_neg) {
        next.push_back(t);
        continue;
      }
      if (!any_pos) {
        SubTriangle v = t;
        v.material = false;
        next.push_back(v);
        continue;
      }
      clip_polygon(as_polygon(t), f, pos, neg);
      fan(pos, true, 0.0, next);
      fan(neg, false, 0.0, next);
    }
    tris = std::move(next);
  }

  for (const auto& crack : geometry.cracks)
    for (std::size_t s = 1; s < crack.path.size(); ++s)
      tris = split_along_segment(std::move(tris), crack.path[s - 1], crack.path[s], eps);

  std::vector<SubTriangle> out;
  out.reserve(tris.size());
  for (const auto& t : tris)
    if (t.area() > min_area) out.push_back(t);
  return out;
}

}  // namespace fgm
