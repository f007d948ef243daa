#include "doctest.h"

#include "fgm/classify.hpp"
#include "fgm/geometry.hpp"
#include "fgm/mesh.hpp"
#include "fgm/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

using namespace fgm;

namespace {

constexpr double kPi = std::numbers::pi;

Crack straight_crack(Vec2 mouth, Vec2 tip, int host = -1) {
  Crack c;
  c.path = {mouth, tip};
  c.host_cutout = host;
  return c;
}

double material_area(const std::vector<SubTriangle>& tris) {
  double a = 0.0;
  for (const auto& t : tris)
    if (t.material) a += t.area();
  return a;
}

double total_area(const std::vector<SubTriangle>& tris) {
  double a = 0.0;
  for (const auto& t : tris) a += t.area();
  return a;
}

double quad_area(const std::array<Vec2, 4>& c) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec2& p = c[i];
    const Vec2& q = c[(i + 1) % 4];
    s += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * s;
}

// Element (column i, row j) of a structured mesh, by coordinates.
int element_at(const Mesh& m, const Vec2& x) {
  const int i = static_cast<int>(std::floor(x.x() / (m.a / m.nx)));
  const int j = static_cast<int>(std::floor(x.y() / (m.b / m.ny)));
  return j * m.nx + i;
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("circle level set") {
  const Circle c{Vec2(0.3, 0.4), 0.1};
  CHECK(circle_level_set(c.center, c) == doctest::Approx(-0.1));
  CHECK(circle_level_set(Vec2(0.4, 0.4), c) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(circle_level_set(Vec2(0.3, 0.6), c) == doctest::Approx(0.1));
}

TEST_CASE("ellipse level set") {
  const Ellipse e{Vec2(0.5, 0.5), 0.2, 0.1, 0.0};
  CHECK(std::abs(ellipse_level_set(Vec2(0.7, 0.5), e)) < 1e-14);
  CHECK(std::abs(ellipse_level_set(Vec2(0.5, 0.6), e)) < 1e-14);
  CHECK(ellipse_level_set(e.center, e) == doctest::Approx(-1.0));

  SUBCASE("equal axes reproduce the circle") {
    for (double th : {0.0, 0.4, 1.3, 2.9}) {
      const Ellipse round{Vec2(0.5, 0.5), 0.15, 0.15, th};
      const Circle circ{Vec2(0.5, 0.5), 0.15};
      for (int i = 0; i < 64; ++i) {
        const double phi = 2 * kPi * i / 64;
        const Vec2 p = circ.center + 0.15 * Vec2(std::cos(phi), std::sin(phi));
        CHECK(std::abs(ellipse_level_set(p, round)) < 1e-13);
        CHECK(std::abs(circle_level_set(p, circ)) < 1e-15);
      }
    }
  }

  SUBCASE("orientation has period pi") {
    for (double th : {0.0, 0.3, 1.1}) {
      const Ellipse a{Vec2(0.4, 0.6), 0.25, 0.08, th};
      const Ellipse b{Vec2(0.4, 0.6), 0.25, 0.08, th + kPi};
      for (int i = 0; i < 90; ++i) {
        const Vec2 p = rim_point(a, 2 * kPi * i / 90);
        CHECK(std::abs(ellipse_level_set(p, a)) < 1e-12);
        CHECK(std::abs(ellipse_level_set(p, b)) < 1e-12);
      }
    }
  }

  SUBCASE("rotated boundary points") {
    // parametric rim in the rotated frame
    const double th = 0.7;
    const Ellipse e2{Vec2(0.5, 0.5), 0.3, 0.12, th};
    for (int i = 0; i < 40; ++i) {
      const double t = 2 * kPi * i / 40;
      const Vec2 local(0.3 * std::cos(t), 0.12 * std::sin(t));
      const Vec2 p = e2.center + Vec2(std::cos(th) * local.x() - std::sin(th) * local.y(),
                                      std::sin(th) * local.x() + std::cos(th) * local.y());
      CHECK(std::abs(ellipse_level_set(p, e2)) < 1e-13);
    }
  }
}

TEST_CASE("level set signs on random points") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const Circle c{Vec2(0.45, 0.55), 0.21};
  const Ellipse e{Vec2(0.5, 0.45), 0.3, 0.1, 0.6};
  int wrong = 0;
  for (int i = 0; i < 10000; ++i) {
    const Vec2 x(U(rng), U(rng));
    const bool in_circle = (x - c.center).squaredNorm() < c.radius * c.radius;
    if ((level_set(x, Cutout(c)) < 0) != in_circle) ++wrong;
    const Vec2 d = x - e.center;
    const double u = std::cos(e.orientation) * d.x() + std::sin(e.orientation) * d.y();
    const double v = -std::sin(e.orientation) * d.x() + std::cos(e.orientation) * d.y();
    const bool in_ellipse = (u / 0.3) * (u / 0.3) + (v / 0.1) * (v / 0.1) < 1.0;
    if ((level_set(x, Cutout(e)) < 0) != in_ellipse) ++wrong;
  }
  CHECK(wrong == 0);
}

TEST_CASE("crack local coordinates") {
  const Crack c = straight_crack(Vec2(0.0, 0.5), Vec2(0.4, 0.5));
  const CrackLocal at_tip = crack_local_coordinates(Vec2(0.4, 0.5), c);
  CHECK(at_tip.r == 0.0);
  const CrackLocal ahead = crack_local_coordinates(Vec2(0.6, 0.5), c);
  CHECK(ahead.r == doctest::Approx(0.2));
  CHECK(ahead.theta == doctest::Approx(0.0));
  const CrackLocal behind = crack_local_coordinates(Vec2(0.2, 0.5 + 1e-12), c);
  CHECK(behind.theta == doctest::Approx(kPi));
  CHECK(behind.side == 1);
  const CrackLocal below = crack_local_coordinates(Vec2(0.2, 0.45), c);
  CHECK(below.side == -1);
  CHECK(below.theta < 0.0);
  const CrackLocal on = crack_local_coordinates(Vec2(0.2, 0.5), c);
  CHECK(on.side == 1);
  CHECK(on.on_line);
  CHECK(crack_side(Vec2(0.1, 0.7), c) == 1);
  CHECK(crack_side(Vec2(0.1, 0.3), c) == -1);
  CHECK(c.length() == doctest::Approx(0.4));
  CHECK((c.tip_direction() - Vec2(1, 0)).norm() < 1e-15);
}

TEST_CASE("heaviside function") {
  CHECK(heaviside(1) == 1.0);
  CHECK(heaviside(-1) == 0.0);
  // shifted form vanishes at the node itself on either side
  for (int side : {-1, 1}) CHECK(heaviside(side) - heaviside(side) == 0.0);
}

TEST_CASE("branch functions") {
  for (double th : {-2.0, 0.0, 1.0, kPi}) {
    const auto z = branch_functions(0.0, th);
    for (double v : z) CHECK(v == 0.0);
  }
  const auto zero = branch_functions(0.25, 0.0);
  CHECK(zero[0] == doctest::Approx(0.0));
  CHECK(zero[1] == doctest::Approx(0.5));
  CHECK(zero[2] == doctest::Approx(0.0));
  CHECK(zero[3] == doctest::Approx(0.0));
  const auto pi = branch_functions(0.25, kPi);
  CHECK(pi[0] == doctest::Approx(0.5));
  CHECK(std::abs(pi[1]) < 1e-15);
  CHECK(std::abs(pi[2]) < 1e-15);
  CHECK(std::abs(pi[3]) < 1e-15);

  SUBCASE("only the first function jumps across the crack faces") {
    const double r = 0.09;
    const auto up = branch_functions(r, kPi - 1e-9);
    const auto down = branch_functions(r, -kPi + 1e-9);
    CHECK(up[0] - down[0] == doctest::Approx(2 * std::sqrt(r)).epsilon(1e-8));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(up[i] - down[i]) < 1e-8);
  }

  SUBCASE("global gradients match finite differences") {
    const Crack c = straight_crack(Vec2(0.1, 0.2), Vec2(0.5, 0.45));
    const double eps = 1e-7;
    for (const Vec2& x : {Vec2(0.6, 0.5), Vec2(0.3, 0.5), Vec2(0.45, 0.3)}) {
      const BranchValues b = branch_functions_at(x, c);
      for (int i = 0; i < 4; ++i) {
        const double dx = (branch_functions_at(x + Vec2(eps, 0), c).value[i] -
                           branch_functions_at(x - Vec2(eps, 0), c).value[i]) / (2 * eps);
        const double dy = (branch_functions_at(x + Vec2(0, eps), c).value[i] -
                           branch_functions_at(x - Vec2(0, eps), c).value[i]) / (2 * eps);
        CHECK(b.gradient[i].x() == doctest::Approx(dx).epsilon(1e-6));
        CHECK(b.gradient[i].y() == doctest::Approx(dy).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("classification without discontinuities") {
  const Mesh m = generate_mesh(PlateSpec{1, 1, 0.1, 8, 6});
  const EnrichmentPlan p = classify(m, DiscontinuitySet{});
  CHECK(p.count(ElementCategory::non_enriched) == 48);
  CHECK(p.num_eliminated() == 0);
  for (const auto& n : p.nodes) CHECK_FALSE(n.enriched());
}

TEST_CASE("classification around a central circular cutout") {
  const Mesh m = generate_mesh(PlateSpec{1, 1, 0.1, 40, 40});
  DiscontinuitySet g;
  g.cutouts.push_back(Circle{Vec2(0.5, 0.5), 0.2});
  const EnrichmentPlan p = classify(m, g);
  const std::size_t v = p.count(ElementCategory::void_element);
  const std::size_t cut = p.count(ElementCategory::cut_by_void);
  const std::size_t plain = p.count(ElementCategory::non_enriched);
  CHECK(v + cut + plain == 1600);
  CHECK(v > 0);
  CHECK(cut > 0);

  // brute force: corner level sets decide void / cut / plain
  std::size_t bf_void = 0, bf_cut = 0;
  for (std::size_t e = 0; e < m.num_elements(); ++e) {
    int inside = 0;
    for (const Vec2& x : m.corners(e)) inside += (x - Vec2(0.5, 0.5)).norm() < 0.2 - 1e-9;
    // also catch an arc bulging through an edge between two outside corners
    const auto c = m.corners(e);
    const Vec2 nearest(std::clamp(0.5, c[0].x(), c[2].x()), std::clamp(0.5, c[0].y(), c[2].y()));
    // the circle is tangent to the lines x, y = 0.3 and 0.7; tangency is not a cut
    const bool touches = (nearest - Vec2(0.5, 0.5)).norm() < 0.2 - 1e-9;
    if (inside == 4) ++bf_void;
    else if (inside > 0 || touches) ++bf_cut;
  }
  CHECK(v == bf_void);
  CHECK(cut == bf_cut);

  // a node is eliminated iff every element around it is void
  const auto around = m.node_elements();
  for (std::size_t n = 0; n < m.num_nodes(); ++n) {
    bool all_void = true;
    for (int e : around[n]) all_void = all_void && p.categories[e] == ElementCategory::void_element;
    CHECK(p.nodes[n].eliminated == all_void);
  }
}

TEST_CASE("single edge crack inside one element row") {
  const Mesh m = generate_mesh(PlateSpec{1, 1, 0.1, 40, 40});
  DiscontinuitySet g;
  const double y = 0.5125;  // middle of row 20
  g.cracks.push_back(straight_crack(Vec2(0.0, y), Vec2(0.3123, y)));
  const EnrichmentPlan p = classify(m, g);
  CHECK(p.count(ElementCategory::tip) == 1);
  REQUIRE(p.tip_elements.size() == 1);
  CHECK(p.tip_elements[0] == element_at(m, Vec2(0.3123, y)));
  // elements wholly behind the tip are split; the one touching the tip
  // element shares enriched nodes with it
  for (int i = 0; i < 11; ++i) CHECK(p.categories[20 * 40 + i] == ElementCategory::split);
  CHECK(p.categories[20 * 40 + 11] == ElementCategory::split_tip_blending);
  // tip nodes are the corners of the tip element
  const auto& tip_el = m.elements[p.tip_elements[0]];
  for (int n : tip_el) CHECK(p.nodes[n].tip.size() == 1);
  int n_tip = 0;
  for (const auto& n : p.nodes) n_tip += !n.tip.empty();
  CHECK(n_tip == 4);
}

TEST_CASE("tip on a mesh line is nudged with a warning") {
  const Mesh m = generate_mesh(PlateSpec{1, 1, 0.1, 10, 10});
  DiscontinuitySet g;
  g.cracks.push_back(straight_crack(Vec2(0.0, 0.55), Vec2(0.3, 0.55)));
  const EnrichmentPlan p = classify(m, g);
  CHECK_FALSE(p.warnings.empty());
  CHECK(std::abs(p.geometry.cracks[0].tip().x() - 0.3) > 0.0);
  CHECK(std::abs(p.geometry.cracks[0].tip().x() - 0.3) < 1e-7);
  CHECK(p.count(ElementCategory::tip) == 1);
}

TEST_CASE("classification is deterministic") {
  const Mesh m = generate_mesh(PlateSpec{1, 1, 0.1, 20, 20});
  DiscontinuitySet g;
  g.cutouts.push_back(Ellipse{Vec2(0.5, 0.5), 0.2, 0.08, 0.3});
  g.cracks.push_back(straight_crack(rim_point(g.cutouts[0], 0.3),
                                    rim_point(g.cutouts[0], 0.3) + 0.15 * Vec2(std::cos(0.3), std::sin(0.3)),
                                    0));
  const EnrichmentPlan a = classify(m, g);
  const EnrichmentPlan b = classify(m, g);
  CHECK(a.categories == b.categories);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].heaviside == b.nodes[i].heaviside);
    CHECK(a.nodes[i].tip == b.nodes[i].tip);
    CHECK(a.nodes[i].eliminated == b.nodes[i].eliminated);
  }
  std::ostringstream da, db;
  write_plan_dump(da, m, a);
  write_plan_dump(db, m, b);
  CHECK(da.str() == db.str());
  CHECK(da.str().find("element 0 non_enriched") != std::string::npos);
}

TEST_CASE("partition of an uncut element") {
  const std::array<Vec2, 4> c = {Vec2(0, 0), Vec2(1, 0), Vec2(1.1, 0.9), Vec2(-0.1, 1)};
  DiscontinuitySet g;
  g.cutouts.push_back(Circle{Vec2(5, 5), 0.5});
  const auto tris = partition_cut_element(c, g);
  CHECK(material_area(tris) == doctest::Approx(quad_area(c)).epsilon(1e-14));
  for (const auto& t : tris) CHECK(t.material);
}

TEST_CASE("partition by a crack through opposite midpoints") {
  const std::array<Vec2, 4> c = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  DiscontinuitySet g;
  g.cracks.push_back(straight_crack(Vec2(-0.5, 0.5), Vec2(1.5, 0.5)));
  const auto tris = partition_cut_element(c, g);
  double above = 0.0, below = 0.0;
  for (const auto& t : tris) {
    const int s = crack_side(t.centroid(), g.cracks[0]);
    (s > 0 ? above : below) += t.area();
    // no triangle straddles the crack line
    double lo = 1e9, hi = -1e9;
    for (const Vec2& v : t.v) {
      lo = std::min(lo, v.y() - 0.5);
      hi = std::max(hi, v.y() - 0.5);
    }
    CHECK((lo >= -1e-14 || hi <= 1e-14));
  }
  CHECK(above == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(below == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("partition area against Monte Carlo") {
  const Mesh m = generate_mesh(PlateSpec{1, 1, 0.1, 40, 40});
  const Circle circ{Vec2(0.5, 0.5), 0.2};
  DiscontinuitySet g;
  g.cutouts.push_back(circ);
  const EnrichmentPlan p = classify(m, g);
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int checked = 0;
  for (std::size_t e = 0; e < m.num_elements() && checked < 4; ++e) {
    if (p.categories[e] != ElementCategory::cut_by_void) continue;
    if (e % 7 != 0) continue;  // a spread of cut elements
    const auto c = m.corners(e);
    const auto tris = partition_cut_element(c, g);
    const double lx = c[1].x() - c[0].x(), ly = c[3].y() - c[0].y();
    // slivers make the relative error meaningless
    if (material_area(tris) < 0.2 * lx * ly) continue;
    long hits = 0;
    const long n = 1000000;
    for (long i = 0; i < n; ++i) {
      const Vec2 x(c[0].x() + lx * U(rng), c[0].y() + ly * U(rng));
      hits += (x - circ.center).norm() >= circ.radius;
    }
    const double mc = lx * ly * static_cast<double>(hits) / n;
    CAPTURE(e);
    CHECK(std::abs(material_area(tris) - mc) / mc < 2e-3);
    ++checked;
  }
  CHECK(checked == 4);
}

TEST_CASE("partitions conserve element area") {
  const Mesh m = generate_mesh(PlateSpec{1, 1, 0.1, 24, 24});
  DiscontinuitySet g;
  g.cutouts.push_back(Ellipse{Vec2(0.5, 0.5), 0.25, 0.1, 0.5});
  const Vec2 mouth = rim_point(g.cutouts[0], 0.5);
  g.cracks.push_back(straight_crack(mouth, mouth + 0.2 * Vec2(std::cos(0.5), std::sin(0.5)), 0));
  g.cracks.push_back(straight_crack(Vec2(0.0, 0.13), Vec2(0.21, 0.19)));
  const EnrichmentPlan p = classify(m, g);
  int partitioned = 0;
  double worst = 0.0;
  for (std::size_t e = 0; e < m.num_elements(); ++e) {
    if (p.partitions[e].empty()) continue;
    ++partitioned;
    const double area = quad_area(m.corners(e));
    worst = std::max(worst, std::abs(total_area(p.partitions[e]) - area) / area);
  }
  CHECK(partitioned > 20);
  CHECK(worst < 1e-9);
}

TEST_CASE("segment clipping and point location") {
  const std::vector<Vec2> sq = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  double t0 = 0, t1 = 0;
  CHECK(clip_segment(Vec2(-1, 0.5), Vec2(2, 0.5), sq, t0, t1));
  CHECK(t0 == doctest::Approx(1.0 / 3));
  CHECK(t1 == doctest::Approx(2.0 / 3));
  CHECK_FALSE(clip_segment(Vec2(-1, 2), Vec2(2, 2), sq, t0, t1));
  CHECK(point_in_convex_polygon(Vec2(0.5, 0.5), sq, 0.0));
  CHECK_FALSE(point_in_convex_polygon(Vec2(1.5, 0.5), sq, 0.0));
  CHECK(distance_to_polygon_boundary(Vec2(0.5, 0.2), sq) == doctest::Approx(0.2));
}

TEST_CASE("malformed discontinuities are rejected") {
  DiscontinuitySet g;
  g.cutouts.push_back(Circle{Vec2(0.95, 0.5), 0.1});
  CHECK_THROWS_AS(validate_discontinuities(g, 1, 1), std::invalid_argument);
  DiscontinuitySet bad_axes;
  bad_axes.cutouts.push_back(Ellipse{Vec2(0.5, 0.5), 0.1, 0.2, 0.0});
  CHECK_THROWS_AS(validate_discontinuities(bad_axes, 1, 1), std::invalid_argument);
  DiscontinuitySet floating;
  floating.cracks.push_back(straight_crack(Vec2(0.3, 0.3), Vec2(0.4, 0.4)));
  CHECK_THROWS_AS(validate_discontinuities(floating, 1, 1), std::invalid_argument);
  DiscontinuitySet ok;
  ok.cutouts.push_back(Circle{Vec2(0.5, 0.5), 0.2});
  ok.cracks.push_back(straight_crack(Vec2(0.7, 0.5), Vec2(0.8, 0.5), 0));
  CHECK_NOTHROW(validate_discontinuities(ok, 1, 1));
}

}  // TEST_SUITE
