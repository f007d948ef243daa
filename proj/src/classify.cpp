#include "fgm/classify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <variant>

namespace fgm {

std::string to_string(ElementCategory c) {
  switch (c) {
    case ElementCategory::non_enriched: return "non_enriched";
    case ElementCategory::tip: return "tip";
    case ElementCategory::tip_blending: return "tip_blending";
    case ElementCategory::split: return "split";
    case ElementCategory::split_blending: return "split_blending";
    case ElementCategory::split_tip_blending: return "split_tip_blending";
    case ElementCategory::cut_by_void: return "cut_by_void";
    case ElementCategory::void_element: return "void";
  }
  return "unknown";
}

std::size_t EnrichmentPlan::count(ElementCategory c) const {
  return static_cast<std::size_t>(std::count(categories.begin(), categories.end(), c));
}

std::size_t EnrichmentPlan::num_eliminated() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const NodeEnrichment& n) { return n.eliminated; }));
}

namespace {

std::vector<Vec2> polygon_of(const std::array<Vec2, 4>& c) { return {c[0], c[1], c[2], c[3]}; }

double quad_area(const std::array<Vec2, 4>& c) {
  const Vec2 d1 = c[2] - c[0];
  const Vec2 d2 = c[3] - c[1];
  return 0.5 * std::abs(d1.x() * d2.y() - d1.y() * d2.x());
}

std::vector<SubTriangle> whole_element(const std::array<Vec2, 4>& c) {
  SubTriangle t0;
  t0.v = {c[0], c[1], c[2]};
  SubTriangle t1;
  t1.v = {c[0], c[2], c[3]};
  return {t0, t1};
}

struct SegmentContact {
  bool touches = false;
  bool crosses = false;  // runs through the element interior
};

SegmentContact crack_contact(const Crack& crack, const std::vector<Vec2>& poly, double eps) {
  SegmentContact out;
  for (std::size_t s = 1; s < crack.path.size(); ++s) {
    const Vec2& p = crack.path[s - 1];
    const Vec2& q = crack.path[s];
    double t0 = 0.0;
    double t1 = 0.0;
    if (!clip_segment(p, q, poly, t0, t1)) continue;
    out.touches = true;
    const double len = (t1 - t0) * (q - p).norm();
    if (len <= eps) continue;
    const Vec2 mid = p + 0.5 * (t0 + t1) * (q - p);
    if (distance_to_polygon_boundary(mid, poly) > eps) out.crosses = true;
  }
  return out;
}

}  // namespace

void validate_discontinuities(const DiscontinuitySet& geometry, double a, double b) {
  const double scale = std::max(a, b);
  for (const auto& c : geometry.cutouts) {
    validate_cutout(c);
    const Vec2 x = cutout_center(c);
    // half-extents of the axis-aligned bounding box
    Vec2 half;
    if (const auto* circle = std::get_if<Circle>(&c)) {
      half = Vec2(circle->radius, circle->radius);
    } else {
      const auto& el = std::get<Ellipse>(c);
      const double cs = std::cos(el.orientation), sn = std::sin(el.orientation);
      half = Vec2(std::hypot(el.semi_major * cs, el.semi_minor * sn),
                  std::hypot(el.semi_major * sn, el.semi_minor * cs));
    }
    if (!(x.x() - half.x() > 0.0 && x.x() + half.x() < a && x.y() - half.y() > 0.0 &&
          x.y() + half.y() < b))
      throw std::invalid_argument("cutout does not lie inside the plate");
  }
  for (const auto& crack : geometry.cracks) {
    if (crack.path.size() < 2) throw std::invalid_argument("crack path needs at least two points");
    for (std::size_t i = 1; i < crack.path.size(); ++i)
      if (!((crack.path[i] - crack.path[i - 1]).norm() > 1e-12 * scale))
        throw std::invalid_argument("crack has a zero-length segment");
    const Vec2& m = crack.mouth();
    if (crack.host_cutout >= 0) {
      if (crack.host_cutout >= static_cast<int>(geometry.cutouts.size()))
        throw std::invalid_argument("crack refers to a missing cutout");
      const Cutout& host = geometry.cutouts[crack.host_cutout];
      const Vec2 rim = rim_point(host, std::atan2(m.y() - cutout_center(host).y(),
                                                  m.x() - cutout_center(host).x()));
      if ((rim - m).norm() > 1e-6 * scale)
        throw std::invalid_argument("crack mouth is not on its host cutout rim");
    } else {
      const double d = std::min({m.x(), a - m.x(), m.y(), b - m.y()});
      if (std::abs(d) > 1e-9 * scale)
        throw std::invalid_argument("crack mouth is neither on a cutout rim nor on the plate edge");
    }
    const Vec2& t = crack.tip();
    if (!(t.x() > 0.0 && t.x() < a && t.y() > 0.0 && t.y() < b))
      throw std::invalid_argument("crack tip lies outside the plate");
    for (const auto& c : geometry.cutouts)
      if (level_set(t, c) <= 0.0) throw std::invalid_argument("crack tip lies inside a cutout");
  }
}

EnrichmentPlan classify(const Mesh& mesh, const DiscontinuitySet& geometry,
                        const ClassifyOptions& options) {
  validate_discontinuities(geometry, mesh.a, mesh.b);
  const std::size_t ne = mesh.num_elements();
  const std::size_t nn = mesh.num_nodes();
  const double he = mesh.element_size();
  const double eps = 1e-12 * he;

  EnrichmentPlan plan;
  plan.geometry = geometry;
  plan.categories.assign(ne, ElementCategory::non_enriched);
  plan.partitions.assign(ne, {});
  plan.nodes.assign(nn, {});

  // Tips on a mesh line or node are nudged obliquely into one element.
  const double oblique = 0.5235987755982988;  // 30 degrees
  for (std::size_t c = 0; c < plan.geometry.cracks.size(); ++c) {
    Crack& crack = plan.geometry.cracks[c];
    for (int attempt = 0; attempt < 4; ++attempt) {
      bool near_line = false;
      for (std::size_t e = 0; e < ne && !near_line; ++e) {
        const auto poly = polygon_of(mesh.corners(e));
        if (point_in_convex_polygon(crack.tip(), poly, 1e-10 * he) &&
            distance_to_polygon_boundary(crack.tip(), poly) <= 1e-10 * he)
          near_line = true;
      }
      if (!near_line) break;
      const Vec2 d = crack.tip_direction();
      const double cs = std::cos(oblique);
      const double sn = std::sin(oblique);
      crack.path.back() += 1e-8 * he * Vec2(cs * d.x() - sn * d.y(), sn * d.x() + cs * d.y());
      std::ostringstream msg;
      msg << "crack " << c << ": tip on a mesh line, moved by " << 1e-8 * he;
      plan.warnings.push_back(msg.str());
    }
    if (crack.host_cutout >= 0) {
      const Vec2 back = (crack.path[0] - crack.path[1]).normalized();
      crack.path[0] += options.mouth_extension * he * back;
    }
  }

  plan.tip_elements.assign(plan.geometry.cracks.size(), -1);
  for (std::size_t c = 0; c < plan.geometry.cracks.size(); ++c)
    for (std::size_t e = 0; e < ne; ++e)
      if (point_in_convex_polygon(plan.geometry.cracks[c].tip(), polygon_of(mesh.corners(e)), 0.0)) {
        plan.tip_elements[c] = static_cast<int>(e);
        break;
      }
  for (std::size_t c = 0; c < plan.tip_elements.size(); ++c)
    if (plan.tip_elements[c] < 0) throw std::invalid_argument("crack tip is not inside the mesh");

  // Element-level contact with the discontinuities.
  const std::size_t nc = plan.geometry.cracks.size();
  std::vector<std::vector<SegmentContact>> contact(ne, std::vector<SegmentContact>(nc));
  std::vector<char> crossed(ne, 0);
  std::vector<char> cut_by_void(ne, 0);
  std::vector<char> is_void(ne, 0);
  std::vector<double> material_area(ne, 0.0);

  for (std::size_t e = 0; e < ne; ++e) {
    const auto corners = mesh.corners(e);
    const auto poly = polygon_of(corners);
    const double area = quad_area(corners);
    material_area[e] = area;
    for (std::size_t c = 0; c < nc; ++c) {
      contact[e][c] = crack_contact(plan.geometry.cracks[c], poly, eps);
      if (contact[e][c].crosses) crossed[e] = 1;
    }
    bool near_cutout = false;
    if (!plan.geometry.cutouts.empty()) {
      for (const auto& t : base_triangulation(corners, options.partition.subdivisions)) {
        for (const auto& x : t.v)
          for (const auto& cut : plan.geometry.cutouts)
            if (level_set(x, cut) < 0.0) near_cutout = true;
        if (near_cutout) break;
      }
    }
    if (!near_cutout && !crossed[e]) continue;

    auto tris = partition_cut_element(corners, plan.geometry, options.partition);
    double mat = 0.0;
    for (const auto& t : tris)
      if (t.material) mat += t.area();
    material_area[e] = mat;
    if (mat <= 0.0) {
      is_void[e] = 1;
    } else if (area - mat > options.partition.sliver_fraction * area) {
      cut_by_void[e] = 1;
    }
    plan.partitions[e] = std::move(tris);
  }

  for (std::size_t c = 0; c < nc; ++c)
    if (is_void[plan.tip_elements[c]]) throw std::invalid_argument("crack tip lies in a void element");

  // Nodes without material support are removed.
  const auto node_elems = mesh.node_elements();
  for (std::size_t n = 0; n < nn; ++n) {
    bool any_material = false;
    for (int e : node_elems[n])
      if (!is_void[e]) any_material = true;
    plan.nodes[n].eliminated = !any_material;
  }

  for (std::size_t c = 0; c < nc; ++c) {
    const int te = plan.tip_elements[c];
    for (int n : mesh.elements[te])
      if (!plan.nodes[n].eliminated) plan.nodes[n].tip.push_back(static_cast<int>(c));
  }

  for (std::size_t c = 0; c < nc; ++c) {
    const Crack& crack = plan.geometry.cracks[c];
    for (std::size_t n = 0; n < nn; ++n) {
      NodeEnrichment& node = plan.nodes[n];
      if (node.eliminated) continue;
      if (std::find(node.tip.begin(), node.tip.end(), static_cast<int>(c)) != node.tip.end())
        continue;
      bool touched = false;
      for (int e : node_elems[n])
        if (!is_void[e] && contact[e][c].touches) touched = true;
      if (!touched) continue;
      // The whole material support is split by side, so a crack running
      // along (or just beside) a mesh line still sees both sides.
      double plus = 0.0;
      double minus = 0.0;
      for (int e : node_elems[n]) {
        if (is_void[e]) continue;
        const auto& tris = plan.partitions[e].empty() ? whole_element(mesh.corners(e))
                                                      : plan.partitions[e];
        for (const auto& t : tris) {
          if (!t.material) continue;
          (crack_side(t.centroid(), crack) > 0 ? plus : minus) += t.area();
        }
      }
      const double total = plus + minus;
      if (plus > options.side_area_fraction * total && minus > options.side_area_fraction * total)
        node.heaviside.push_back(static_cast<int>(c));
    }
  }

  for (std::size_t e = 0; e < ne; ++e) {
    bool tip_node = false;
    bool step_node = false;
    for (int n : mesh.elements[e]) {
      tip_node |= !plan.nodes[n].tip.empty();
      step_node |= !plan.nodes[n].heaviside.empty();
    }
    const bool holds_tip =
        std::find(plan.tip_elements.begin(), plan.tip_elements.end(), static_cast<int>(e)) !=
        plan.tip_elements.end();
    ElementCategory cat = ElementCategory::non_enriched;
    if (is_void[e])
      cat = ElementCategory::void_element;
    else if (holds_tip)
      cat = ElementCategory::tip;
    else if (crossed[e])
      cat = tip_node ? ElementCategory::split_tip_blending : ElementCategory::split;
    else if (cut_by_void[e])
      cat = ElementCategory::cut_by_void;
    else if (tip_node)
      cat = ElementCategory::tip_blending;
    else if (step_node)
      cat = ElementCategory::split_blending;
    plan.categories[e] = cat;
  }
  return plan;
}

void write_plan_dump(std::ostream& os, const Mesh& mesh, const EnrichmentPlan& plan) {
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    os << "element " << e << ' ' << to_string(plan.categories[e]) << '\n';
    for (const auto& t : plan.partitions[e]) {
      os << "tri";
      for (const auto& v : t.v) os << ' ' << v.x() << ' ' << v.y();
      os << (t.material ? " material" : " void") << '\n';
    }
  }
  for (std::size_t n = 0; n < plan.nodes.size(); ++n) {
    const auto& node = plan.nodes[n];
    if (!node.eliminated && !node.enriched()) continue;
    os << "node " << n;
    if (node.eliminated) os << " eliminated";
    for (int c : node.heaviside) os << " heaviside " << c;
    for (int c : node.tip) os << " tip " << c;
    os << '\n';
  }
}

}  // namespace fgm
