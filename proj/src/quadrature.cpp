#include "fgm/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace fgm {

namespace {

// Legendre polynomial P_n(x) and its derivative by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

GaussRule1D gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  GaussRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

namespace {

void add_orbit3(TriangleRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  r.points.push_back({a, a, b});
  r.points.push_back({a, b, a});
  r.points.push_back({b, a, a});
  for (int i = 0; i < 3; ++i) r.weights.push_back(w);
}

void add_orbit6(TriangleRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  const std::array<std::array<double, 3>, 6> perms = {{
      {a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
  for (const auto& p : perms) {
    r.points.push_back(p);
    r.weights.push_back(w);
  }
}

// Conical product of an n-point Gauss rule: (s, t) in [0,1]^2 maps to the
// triangle with vertex 3 collapsed, Jacobian (1 - s).
TriangleRule collapsed_gauss(int n) {
  const GaussRule1D g = gauss_legendre(n);
  TriangleRule r;
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * (g.points[i] + 1.0);
    for (int j = 0; j < n; ++j) {
      const double t = 0.5 * (g.points[j] + 1.0);
      const double l1 = s;
      const double l2 = (1.0 - s) * t;
      r.points.push_back({l1, l2, 1.0 - l1 - l2});
      // 0.25 from the two interval maps, 2 to normalise to unit total weight.
      r.weights.push_back(0.5 * g.weights[i] * g.weights[j] * (1.0 - s));
    }
  }
  r.degree = 2 * n - 2;
  return r;
}

}  // namespace

TriangleRule triangle_rule(TriangleRuleKind kind) {
  TriangleRule r;
  switch (kind) {
    case TriangleRuleKind::three_point:
      add_orbit3(r, 1.0 / 6.0, 1.0 / 3.0);
      r.degree = 2;
      return r;
    case TriangleRuleKind::collapsed_four:
      return collapsed_gauss(2);
    case TriangleRuleKind::six_point:
      add_orbit3(r, 0.445948490915965, 0.223381589678011);
      add_orbit3(r, 0.091576213509771, 0.109951743655322);
      r.degree = 4;
      return r;
    case TriangleRuleKind::thirteen_point:
      r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
      r.weights.push_back(-0.149570044467682);
      add_orbit3(r, 0.260345966079040, 0.175615257433208);
      add_orbit3(r, 0.065130102902216, 0.053347235608838);
      add_orbit6(r, 0.048690315425316, 0.312865496004874, 0.077113760890257);
      r.degree = 7;
      return r;
  }
  throw std::invalid_argument("unknown triangle rule");
}

TriangleRule refine_triangle_rule(const TriangleRule& rule, int levels) {
  if (levels <= 0) return rule;
  // Children of the reference triangle in barycentric coordinates.
  using B = std::array<double, 3>;
  const B v0{1, 0, 0}, v1{0, 1, 0}, v2{0, 0, 1};
  auto mid = [](const B& p, const B& q) {
    return B{0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]), 0.5 * (p[2] + q[2])};
  };
  const B m01 = mid(v0, v1), m12 = mid(v1, v2), m20 = mid(v2, v0);
  const std::array<std::array<B, 3>, 4> children = {{
      {v0, m01, m20}, {m01, v1, m12}, {m20, m12, v2}, {m12, m20, m01}}};
  TriangleRule out;
  out.degree = rule.degree;
  for (const auto& ch : children) {
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const B& l = rule.points[q];
      B p{};
      for (int c = 0; c < 3; ++c)
        p[c] = l[0] * ch[0][c] + l[1] * ch[1][c] + l[2] * ch[2][c];
      out.points.push_back(p);
      out.weights.push_back(0.25 * rule.weights[q]);
    }
  }
  return refine_triangle_rule(out, levels - 1);
}

}  // namespace fgm
