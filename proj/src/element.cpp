#include "fgm/element.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace fgm {

Q4Shape q4_shape(double xi, double eta) {
  static constexpr double sx[4] = {-1.0, 1.0, 1.0, -1.0};
  static constexpr double sy[4] = {-1.0, -1.0, 1.0, 1.0};
  Q4Shape s;
  for (int i = 0; i < 4; ++i) {
    s.N[i] = 0.25 * (1.0 + sx[i] * xi) * (1.0 + sy[i] * eta);
    s.dxi[i] = 0.25 * sx[i] * (1.0 + sy[i] * eta);
    s.deta[i] = 0.25 * sy[i] * (1.0 + sx[i] * xi);
  }
  return s;
}

QuadratureSpec QuadratureSpec::doubled() const {
  QuadratureSpec d;
  d.non_enriched = 2 * non_enriched;
  d.tip_blending = 2 * tip_blending;
  d.split_blending = 2 * split_blending;
  d.tip = refine_triangle_rule(tip, 1);
  d.split = refine_triangle_rule(split, 1);
  d.split_tip_blending = refine_triangle_rule(split_tip_blending, 1);
  d.cut_by_void = refine_triangle_rule(cut_by_void, 1);
  return d;
}

ElementGeometry standard_element(const std::array<Vec2, 4>& corners) {
  ElementGeometry g;
  g.corners = corners;
  for (int i = 0; i < 4; ++i) g.layout.functions.push_back({i, ElementFunction::Kind::standard, -1, 0});
  return g;
}

ElementGeometry element_geometry(const Mesh& mesh, const EnrichmentPlan& plan, std::size_t e) {
  ElementGeometry g = standard_element(mesh.corners(e));
  g.category = plan.categories[e];
  if (!plan.partitions[e].empty()) g.partition = &plan.partitions[e];
  g.discontinuities = &plan.geometry;
  for (int i = 0; i < 4; ++i) {
    const NodeEnrichment& node = plan.nodes[mesh.elements[e][i]];
    for (int c : node.heaviside)
      g.layout.functions.push_back({i, ElementFunction::Kind::heaviside, c, 0});
    for (int c : node.tip)
      for (int a = 0; a < 4; ++a)
        g.layout.functions.push_back({i, ElementFunction::Kind::tip, c, a});
  }
  return g;
}

namespace {

// Rows: d/dxi, d/deta; columns: x, y.
Eigen::Matrix2d jacobian(const std::array<Vec2, 4>& c, const Q4Shape& s) {
  Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
  for (int i = 0; i < 4; ++i) {
    J(0, 0) += s.dxi[i] * c[i].x();
    J(0, 1) += s.dxi[i] * c[i].y();
    J(1, 0) += s.deta[i] * c[i].x();
    J(1, 1) += s.deta[i] * c[i].y();
  }
  return J;
}

Vec2 map_point(const std::array<Vec2, 4>& c, const Q4Shape& s) {
  Vec2 x = Vec2::Zero();
  for (int i = 0; i < 4; ++i) x += s.N[i] * c[i];
  return x;
}

void check_jacobian(double det, const std::array<Vec2, 4>& c) {
  if (!(det > 0.0)) {
    const Vec2 mid = 0.25 * (c[0] + c[1] + c[2] + c[3]);
    throw MeshError("non-positive Jacobian (" + std::to_string(det) + ") in element near (" +
                    std::to_string(mid.x()) + ", " + std::to_string(mid.y()) + ")");
  }
}

const TriangleRule& rule_for(ElementCategory c, const QuadratureSpec& q) {
  switch (c) {
    case ElementCategory::tip: return q.tip;
    case ElementCategory::split: return q.split;
    case ElementCategory::split_tip_blending: return q.split_tip_blending;
    default: return q.cut_by_void;
  }
}

int gauss_order_for(ElementCategory c, const QuadratureSpec& q) {
  switch (c) {
    case ElementCategory::non_enriched: return q.non_enriched;
    case ElementCategory::split_blending: return q.split_blending;
    default: return q.tip_blending;
  }
}

// Covariant transverse shear of one standard function sampled at a tying
// point: coefficients of (w, theta_x, theta_y).
struct TyingRows {
  std::array<Eigen::Vector3d, 4> xi_bottom;  // e_xi at (0, -1)
  std::array<Eigen::Vector3d, 4> xi_top;     // e_xi at (0, +1)
  std::array<Eigen::Vector3d, 4> eta_left;   // e_eta at (-1, 0)
  std::array<Eigen::Vector3d, 4> eta_right;  // e_eta at (+1, 0)
};

TyingRows tying_rows(const std::array<Vec2, 4>& c) {
  TyingRows t;
  auto along_xi = [&](double xi, double eta, std::array<Eigen::Vector3d, 4>& out) {
    const Q4Shape s = q4_shape(xi, eta);
    const Eigen::Matrix2d J = jacobian(c, s);
    for (int i = 0; i < 4; ++i) out[i] = {s.dxi[i], s.N[i] * J(0, 0), s.N[i] * J(0, 1)};
  };
  auto along_eta = [&](double xi, double eta, std::array<Eigen::Vector3d, 4>& out) {
    const Q4Shape s = q4_shape(xi, eta);
    const Eigen::Matrix2d J = jacobian(c, s);
    for (int i = 0; i < 4; ++i) out[i] = {s.deta[i], s.N[i] * J(1, 0), s.N[i] * J(1, 1)};
  };
  along_xi(0.0, -1.0, t.xi_bottom);
  along_xi(0.0, 1.0, t.xi_top);
  along_eta(-1.0, 0.0, t.eta_left);
  along_eta(1.0, 0.0, t.eta_right);
  return t;
}

// 2 x 3 physical shear rows of standard function i at (xi, eta).
Eigen::Matrix<double, 2, 3> assumed_shear(const TyingRows& t, int i, double xi, double eta,
                                          const Eigen::Matrix2d& Jinv) {
  Eigen::Matrix<double, 2, 3> cov;
  cov.row(0) = 0.5 * (1.0 - eta) * t.xi_bottom[i] + 0.5 * (1.0 + eta) * t.xi_top[i];
  cov.row(1) = 0.5 * (1.0 - xi) * t.eta_left[i] + 0.5 * (1.0 + xi) * t.eta_right[i];
  return Jinv * cov;
}

struct Wanted {
  bool K = false;
  bool M = false;
  bool KG = false;
  bool F = false;
};

ElementMatrices compute(const ElementGeometry& g, const SectionProperties& section,
                        const Eigen::Vector3d& Nth, const QuadratureSpec& q, Wanted want) {
  const auto& c = g.corners;
  const int nf = static_cast<int>(g.layout.functions.size());
  const int nd = kFieldsPerNode * nf;
  ElementMatrices out;
  if (want.K) out.K = Eigen::MatrixXd::Zero(nd, nd);
  if (want.M) out.M = Eigen::MatrixXd::Zero(nd, nd);
  if (want.KG) out.KG = Eigen::MatrixXd::Zero(nd, nd);
  if (want.F) out.F = Eigen::VectorXd::Zero(nd);

  const TyingRows tying = tying_rows(c);
  const Eigen::Matrix<double, 8, 8> C = section.generalized();
  const double inertia[5] = {section.p, section.p, section.p, section.I, section.I};
  Eigen::Matrix2d S;
  S << -Nth(0), -Nth(2), -Nth(2), -Nth(1);
  const double rot = section.h * section.h / 12.0;

  // Enrichment values at the nodes for the shifted forms.
  const DiscontinuitySet* geo = g.discontinuities;
  std::vector<double> node_shift(nf, 0.0);
  bool any_tip = false;
  for (int f = 0; f < nf; ++f) {
    const ElementFunction& fn = g.layout.functions[f];
    if (fn.kind == ElementFunction::Kind::standard) continue;
    if (!geo) throw std::invalid_argument("enriched element without discontinuity data");
    const Crack& crack = geo->cracks.at(fn.crack);
    if (fn.kind == ElementFunction::Kind::heaviside) {
      node_shift[f] = heaviside(crack_side(c[fn.node], crack));
    } else {
      node_shift[f] = branch_functions_at(c[fn.node], crack).value[fn.branch];
      any_tip = true;
    }
  }

  std::vector<double> val(nf);
  std::vector<Vec2> grad(nf);
  Eigen::MatrixXd B(8, nd);
  for (const IntegrationPoint& ip : integration_points(g, q)) {
    const Q4Shape s = q4_shape(ip.xi, ip.eta);
    const Eigen::Matrix2d J = jacobian(c, s);
    check_jacobian(J.determinant(), c);
    const Eigen::Matrix2d Jinv = J.inverse();
    std::array<Vec2, 4> dN;
    for (int i = 0; i < 4; ++i) dN[i] = Jinv * Vec2(s.dxi[i], s.deta[i]);

    std::vector<BranchValues> branch;
    if (any_tip) {
      branch.resize(geo->cracks.size());
      std::vector<char> done(geo->cracks.size(), 0);
      for (const auto& fn : g.layout.functions)
        if (fn.kind == ElementFunction::Kind::tip && !done[fn.crack]) {
          branch[fn.crack] = branch_functions_at(ip.x, geo->cracks[fn.crack]);
          done[fn.crack] = 1;
        }
    }

    for (int f = 0; f < nf; ++f) {
      const ElementFunction& fn = g.layout.functions[f];
      const int i = fn.node;
      switch (fn.kind) {
        case ElementFunction::Kind::standard:
          val[f] = s.N[i];
          grad[f] = dN[i];
          break;
        case ElementFunction::Kind::heaviside: {
          const double psi = heaviside(crack_side(ip.region, geo->cracks[fn.crack])) - node_shift[f];
          val[f] = s.N[i] * psi;
          grad[f] = dN[i] * psi;
          break;
        }
        case ElementFunction::Kind::tip: {
          const BranchValues& bv = branch[fn.crack];
          const double psi = bv.value[fn.branch] - node_shift[f];
          val[f] = s.N[i] * psi;
          grad[f] = dN[i] * psi + s.N[i] * bv.gradient[fn.branch];
          break;
        }
      }
    }

    const double w = ip.weight;
    if (want.K || want.F) {
      B.setZero();
      for (int f = 0; f < nf; ++f) {
        const int o = kFieldsPerNode * f;
        const Vec2& gr = grad[f];
        B(0, o) = gr.x();
        B(1, o + 1) = gr.y();
        B(2, o) = gr.y();
        B(2, o + 1) = gr.x();
        B(3, o + 3) = gr.x();
        B(4, o + 4) = gr.y();
        B(5, o + 3) = gr.y();
        B(5, o + 4) = gr.x();
        if (g.layout.functions[f].kind == ElementFunction::Kind::standard) {
          B.block<2, 3>(6, o + 2) = assumed_shear(tying, g.layout.functions[f].node, ip.xi, ip.eta, Jinv);
        } else {
          B(6, o + 2) = gr.x();
          B(6, o + 3) = val[f];
          B(7, o + 2) = gr.y();
          B(7, o + 4) = val[f];
        }
      }
      if (want.K) out.K.noalias() += w * (B.transpose() * C * B);
      if (want.F)
        out.F.noalias() += w * (B.topRows<3>().transpose() * section.Nth +
                                B.middleRows<3>(3).transpose() * section.Mth);
    }
    if (want.M) {
      for (int f = 0; f < nf; ++f)
        for (int m = 0; m < nf; ++m) {
          const double vv = w * val[f] * val[m];
          for (int a = 0; a < kFieldsPerNode; ++a)
            out.M(kFieldsPerNode * f + a, kFieldsPerNode * m + a) += inertia[a] * vv;
        }
    }
    if (want.KG) {
      for (int f = 0; f < nf; ++f)
        for (int m = 0; m < nf; ++m) {
          const double gg = w * grad[f].dot(S * grad[m]);
          const int of = kFieldsPerNode * f;
          const int oh = kFieldsPerNode * m;
          out.KG(of + 2, oh + 2) += gg;
          out.KG(of + 3, oh + 3) += rot * gg;
          out.KG(of + 4, oh + 4) += rot * gg;
        }
    }
  }
  // remove round-off asymmetry
  if (want.K) out.K = 0.5 * (out.K + out.K.transpose()).eval();
  if (want.M) out.M = 0.5 * (out.M + out.M.transpose()).eval();
  if (want.KG) out.KG = 0.5 * (out.KG + out.KG.transpose()).eval();
  return out;
}

}  // namespace

Eigen::Vector2d inverse_map(const std::array<Vec2, 4>& corners, const Vec2& x) {
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  for (int iter = 0; iter < 50; ++iter) {
    const Q4Shape s = q4_shape(p.x(), p.y());
    const Vec2 r = map_point(corners, s) - x;
    const Eigen::Matrix2d J = jacobian(corners, s);
    const Eigen::Vector2d dp = J.transpose().partialPivLu().solve(-r);
    p += dp;
    if (dp.norm() < 1e-15) break;
  }
  return p;
}

std::vector<IntegrationPoint> integration_points(const ElementGeometry& g,
                                                 const QuadratureSpec& q) {
  const auto& c = g.corners;
  for (int i = 0; i < 4; ++i) {
    static constexpr double px[4] = {-1.0, 1.0, 1.0, -1.0};
    static constexpr double py[4] = {-1.0, -1.0, 1.0, 1.0};
    check_jacobian(jacobian(c, q4_shape(px[i], py[i])).determinant(), c);
  }
  std::vector<IntegrationPoint> pts;
  if (g.partition && !g.partition->empty()) {
    const TriangleRule& rule = rule_for(g.category, q);
    for (const SubTriangle& t : *g.partition) {
      if (!t.material) continue;
      const double area = t.area();
      const Vec2 centroid = t.centroid();
      for (std::size_t k = 0; k < rule.points.size(); ++k) {
        const auto& l = rule.points[k];
        IntegrationPoint ip;
        ip.x = l[0] * t.v[0] + l[1] * t.v[1] + l[2] * t.v[2];
        const Eigen::Vector2d p = inverse_map(c, ip.x);
        ip.xi = p.x();
        ip.eta = p.y();
        ip.weight = rule.weights[k] * area;
        ip.region = centroid;
        pts.push_back(ip);
      }
    }
    return pts;
  }
  const GaussRule1D gr = gauss_legendre(gauss_order_for(g.category, q));
  const Vec2 centroid = 0.25 * (c[0] + c[1] + c[2] + c[3]);
  for (std::size_t j = 0; j < gr.points.size(); ++j)
    for (std::size_t i = 0; i < gr.points.size(); ++i) {
      const Q4Shape s = q4_shape(gr.points[i], gr.points[j]);
      IntegrationPoint ip;
      ip.xi = gr.points[i];
      ip.eta = gr.points[j];
      ip.x = map_point(c, s);
      ip.weight = gr.weights[i] * gr.weights[j] * jacobian(c, s).determinant();
      ip.region = centroid;
      pts.push_back(ip);
    }
  return pts;
}

Eigen::Vector2d substitute_shear_strain(const std::array<Vec2, 4>& corners, double xi, double eta,
                                        const Eigen::Matrix<double, 20, 1>& dofs) {
  const TyingRows t = tying_rows(corners);
  const Eigen::Matrix2d Jinv = jacobian(corners, q4_shape(xi, eta)).inverse();
  Eigen::Vector2d gamma = Eigen::Vector2d::Zero();
  for (int i = 0; i < 4; ++i)
    gamma += assumed_shear(t, i, xi, eta, Jinv) * dofs.segment<3>(kFieldsPerNode * i + 2);
  return gamma;
}

ElementMatrices element_matrices(const ElementGeometry& g, const SectionProperties& section,
                                 const QuadratureSpec& q) {
  return compute(g, section, section.Nth, q, {true, true, true, true});
}

Eigen::MatrixXd element_stiffness(const ElementGeometry& g, const SectionProperties& section,
                                  const QuadratureSpec& q) {
  return compute(g, section, section.Nth, q, {true, false, false, false}).K;
}

Eigen::MatrixXd element_mass(const ElementGeometry& g, double p, double I,
                             const QuadratureSpec& q) {
  SectionProperties s;
  s.p = p;
  s.I = I;
  return compute(g, s, s.Nth, q, {false, true, false, false}).M;
}

Eigen::MatrixXd element_geometric_stiffness(const ElementGeometry& g, const Eigen::Vector3d& Nth,
                                            double h, const QuadratureSpec& q) {
  SectionProperties s;
  s.h = h;
  return compute(g, s, Nth, q, {false, false, true, false}).KG;
}

Eigen::VectorXd element_thermal_load(const ElementGeometry& g, const SectionProperties& section,
                                     const QuadratureSpec& q) {
  return compute(g, section, section.Nth, q, {false, false, false, true}).F;
}

}  // namespace fgm
