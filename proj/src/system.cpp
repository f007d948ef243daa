#include "fgm/system.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace fgm {

std::vector<int> DofMap::element_dofs(const Mesh& mesh, std::size_t e) const {
  std::vector<int> out;
  const auto& nodes = mesh.elements[e];
  for (int n : nodes)
    for (int f = 0; f < kFieldsPerNode; ++f) out.push_back(node_start[n] + f);
  for (int n : nodes)
    for (int k = kFieldsPerNode; k < kFieldsPerNode * node_functions[n]; ++k)
      out.push_back(node_start[n] + k);
  return out;
}

int DofMap::standard_dof(int node, int field) const {
  return node_start[node] < 0 ? -1 : node_start[node] + field;
}

DofMap build_dof_map(const Mesh& mesh, const EnrichmentPlan& plan) {
  DofMap map;
  const std::size_t nn = mesh.num_nodes();
  map.node_start.assign(nn, -1);
  map.node_functions.assign(nn, 0);
  int next = 0;
  for (std::size_t n = 0; n < nn; ++n) {
    const NodeEnrichment& node = plan.nodes[n];
    if (node.eliminated) continue;
    const int functions = 1 + static_cast<int>(node.heaviside.size()) + 4 * static_cast<int>(node.tip.size());
    map.node_start[n] = next;
    map.node_functions[n] = functions;
    next += kFieldsPerNode * functions;
  }
  map.num_dofs = next;
  return map;
}

std::vector<int> apply_boundary_conditions(const Mesh& mesh, BoundaryCondition bc,
                                           const DofMap& dofs) {
  const double tol_x = 1e-12 * mesh.a;
  const double tol_y = 1e-12 * mesh.b;
  std::vector<char> fixed(dofs.num_dofs, 0);
  for (std::size_t n = 0; n < mesh.num_nodes(); ++n) {
    if (dofs.node_start[n] < 0) continue;
    const Vec2& x = mesh.nodes[n];
    const bool on_x_edge = std::abs(x.x()) <= tol_x || std::abs(x.x() - mesh.a) <= tol_x;
    const bool on_y_edge = std::abs(x.y()) <= tol_y || std::abs(x.y() - mesh.b) <= tol_y;
    if (!on_x_edge && !on_y_edge) continue;
    std::array<bool, kFieldsPerNode> mask{};
    if (bc == BoundaryCondition::CCCC) {
      mask.fill(true);
    } else {
      if (on_x_edge) mask[0] = mask[2] = mask[4] = true;  // u0, w0, theta_y
      if (on_y_edge) mask[1] = mask[2] = mask[3] = true;  // v0, w0, theta_x
    }
    for (int f = 0; f < dofs.node_functions[n]; ++f)
      for (int k = 0; k < kFieldsPerNode; ++k)
        if (mask[k]) fixed[dofs.node_start[n] + kFieldsPerNode * f + k] = 1;
  }
  std::vector<int> out;
  for (int d = 0; d < dofs.num_dofs; ++d)
    if (fixed[d]) out.push_back(d);
  return out;
}

SparseMatrix DiscreteSystem::reduce(const SparseMatrix& A) const {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(A.nonZeros()));
  for (int col = 0; col < A.outerSize(); ++col) {
    const int rc = reduced_index[col];
    if (rc < 0) continue;
    for (SparseMatrix::InnerIterator it(A, col); it; ++it) {
      const int rr = reduced_index[it.row()];
      if (rr >= 0) t.emplace_back(rr, rc, it.value());
    }
  }
  const int n = static_cast<int>(free_dofs.size());
  SparseMatrix R(n, n);
  R.setFromTriplets(t.begin(), t.end());
  return R;
}

Eigen::VectorXd DiscreteSystem::reduce(const Eigen::VectorXd& v) const {
  Eigen::VectorXd r(free_dofs.size());
  for (std::size_t i = 0; i < free_dofs.size(); ++i) r(i) = v(free_dofs[i]);
  return r;
}

Eigen::VectorXd DiscreteSystem::expand(const Eigen::VectorXd& v) const {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(dofs.num_dofs);
  for (std::size_t i = 0; i < free_dofs.size(); ++i) full(free_dofs[i]) = v(i);
  return full;
}

DiscreteSystem assemble(const Mesh& mesh, const EnrichmentPlan& plan,
                        const SectionProperties& section, BoundaryCondition bc,
                        const AssemblyOptions& options) {
  DiscreteSystem sys;
  sys.mesh = mesh;
  sys.plan = plan;
  sys.bc = bc;
  sys.dofs = build_dof_map(sys.mesh, sys.plan);
  sys.constrained = apply_boundary_conditions(sys.mesh, bc, sys.dofs);

  const std::size_t ne = sys.mesh.num_elements();
  std::vector<ElementMatrices> mats(ne);
  std::vector<std::exception_ptr> errors(ne);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t e = first; e < ne; e += stride) {
      if (sys.plan.categories[e] == ElementCategory::void_element) continue;
      try {
        mats[e] = element_matrices(element_geometry(sys.mesh, sys.plan, e), section,
                                   options.quadrature);
      } catch (...) {
        errors[e] = std::current_exception();
      }
    }
  };
  const std::size_t threads = static_cast<std::size_t>(std::max(1, options.threads));
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  // Serial scatter in element order keeps the result independent of the
  // thread count.
  std::vector<Eigen::Triplet<double>> tk;
  std::vector<Eigen::Triplet<double>> tg;
  std::vector<Eigen::Triplet<double>> tm;
  sys.F = Eigen::VectorXd::Zero(sys.dofs.num_dofs);
  for (std::size_t e = 0; e < ne; ++e) {
    if (sys.plan.categories[e] == ElementCategory::void_element) continue;
    const std::vector<int> gd = sys.dofs.element_dofs(sys.mesh, e);
    const ElementMatrices& m = mats[e];
    const int nd = static_cast<int>(gd.size());
    for (int j = 0; j < nd; ++j) {
      sys.F(gd[j]) += m.F(j);
      for (int i = 0; i < nd; ++i) {
        tk.emplace_back(gd[i], gd[j], m.K(i, j));
        tm.emplace_back(gd[i], gd[j], m.M(i, j));
        if (m.KG(i, j) != 0.0) tg.emplace_back(gd[i], gd[j], m.KG(i, j));
      }
    }
    mats[e] = {};
  }
  const int n = sys.dofs.num_dofs;
  sys.K.resize(n, n);
  sys.K.setFromTriplets(tk.begin(), tk.end());
  sys.M.resize(n, n);
  sys.M.setFromTriplets(tm.begin(), tm.end());
  sys.KG.resize(n, n);
  sys.KG.setFromTriplets(tg.begin(), tg.end());

  sys.reduced_index.assign(n, 0);
  for (int d : sys.constrained) sys.reduced_index[d] = -1;
  for (int d = 0; d < n; ++d)
    if (sys.reduced_index[d] == 0) {
      sys.reduced_index[d] = static_cast<int>(sys.free_dofs.size());
      sys.free_dofs.push_back(d);
    }
  return sys;
}

Eigen::MatrixXd nodal_field(const DiscreteSystem& system, const Eigen::VectorXd& u) {
  const std::size_t nn = system.mesh.num_nodes();
  Eigen::MatrixXd out(nn, kFieldsPerNode);
  for (std::size_t n = 0; n < nn; ++n)
    for (int f = 0; f < kFieldsPerNode; ++f) {
      const int d = system.dofs.standard_dof(static_cast<int>(n), f);
      out(n, f) = d < 0 ? std::numeric_limits<double>::quiet_NaN() : u(d);
    }
  return out;
}

Eigen::VectorXd solve_static_thermal(const DiscreteSystem& system) {
  const SparseMatrix K = system.reduce(system.K);
  const Eigen::VectorXd F = system.reduce(system.F);
  if (K.rows() == 0) return Eigen::VectorXd::Zero(system.dofs.num_dofs);
  Eigen::SimplicialLDLT<SparseMatrix> solver(K);
  if (solver.info() != Eigen::Success)
    throw ConstraintError("stiffness factorization failed; check the boundary conditions");
  const Eigen::VectorXd d = solver.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  if (!(d.cwiseAbs().minCoeff() > 1e-13 * dmax))
    throw ConstraintError("stiffness is singular on the free dofs; the plate is not restrained");
  return system.expand(solver.solve(F));
}

NormalizationStyle parse_normalization(const std::string& s) {
  if (s == "main") return NormalizationStyle::main;
  if (s == "table3") return NormalizationStyle::table3;
  if (s == "table4") return NormalizationStyle::table4;
  throw std::invalid_argument("unknown normalization style '" + s + "'");
}

std::string to_string(NormalizationStyle s) {
  switch (s) {
    case NormalizationStyle::main: return "main";
    case NormalizationStyle::table3: return "table3";
    case NormalizationStyle::table4: return "table4";
  }
  return "main";
}

NormalizationReference normalization_reference(const MaterialSystem& sys, double a, double h,
                                               double T0) {
  NormalizationReference r;
  r.a = a;
  r.h = h;
  r.E_c = sys.ceramic.E.P0;
  r.rho_c = sys.ceramic.rho;
  r.nu_c = sys.nu_fixed.value_or(sys.ceramic.nu);
  r.E_m = constituent_property_at(sys.metal.E, T0);
  r.rho_m = sys.metal.rho;
  r.nu_m = sys.nu_fixed.value_or(sys.metal.nu);
  return r;
}

double normalize_frequency(double omega, NormalizationStyle style,
                           const NormalizationReference& ref) {
  if (std::isnan(omega)) return omega;
  if (omega < 0.0) throw std::domain_error("frequency must be non-negative");
  const double Dc = ref.E_c * ref.h * ref.h * ref.h / (12.0 * (1.0 - ref.nu_c * ref.nu_c));
  switch (style) {
    case NormalizationStyle::main:
      return omega * ref.a * ref.a * std::sqrt(ref.rho_c * ref.h / Dc);
    case NormalizationStyle::table3:
      return omega * ref.a * ref.a / ref.h *
             std::sqrt(ref.rho_m * (1.0 - ref.nu_m * ref.nu_m) / ref.E_m);
    case NormalizationStyle::table4: {
      const double a4 = std::pow(ref.a, 4);
      return std::pow(omega * omega * ref.rho_c * ref.h * a4 / (Dc * (1.0 - ref.nu_c * ref.nu_c)),
                      0.25);
    }
  }
  throw std::invalid_argument("unknown normalization style");
}

SpectralResult solve_eigen(const DiscreteSystem& system, int n_modes, const SolveOptions& options) {
  if (n_modes < 1) throw std::invalid_argument("n_modes must be at least 1");
  const SparseMatrix A =
      options.include_geometric ? system.reduce(SparseMatrix(system.K + system.KG))
                                : system.reduce(system.K);
  const SparseMatrix B = system.reduce(system.M);
  const int count = std::min<int>(n_modes, static_cast<int>(A.rows()));
  const EigenPairs pairs = smallest_eigenpairs(A, B, count, options.eigen);

  SpectralResult r;
  r.modes.resize(system.dofs.num_dofs, count);
  for (int j = 0; j < count; ++j) {
    const double l = pairs.values(j);
    r.lambda.push_back(l);
    r.buckled.push_back(!(l > 0.0));
    r.omega.push_back(l > 0.0 ? std::sqrt(l) : std::numeric_limits<double>::quiet_NaN());
    r.residuals.push_back(pairs.residuals(j));
    r.modes.col(j) = system.expand(pairs.vectors.col(j));
  }
  r.Omega = r.omega;
  return r;
}

void apply_normalization(SpectralResult& result, NormalizationStyle style,
                         const NormalizationReference& ref) {
  result.style = style;
  result.Omega.clear();
  for (double w : result.omega) result.Omega.push_back(normalize_frequency(w, style, ref));
}

void write_mode_shapes(std::ostream& os, const DiscreteSystem& system, const SpectralResult& r) {
  const auto flags = os.flags();
  os << system.mesh.nx << ' ' << system.mesh.ny << ' ' << r.modes.cols() << '\n';
  os << std::setprecision(12);
  for (Eigen::Index j = 0; j < r.modes.cols(); ++j) {
    os << "mode " << j + 1 << ' ' << r.omega[j] << '\n';
    const Eigen::MatrixXd field = nodal_field(system, r.modes.col(j));
    for (std::size_t n = 0; n < system.mesh.num_nodes(); ++n)
      os << system.mesh.nodes[n].x() << ' ' << system.mesh.nodes[n].y() << ' ' << field(n, 2)
         << ' ' << field(n, 3) << ' ' << field(n, 4) << '\n';
  }
  os.flags(flags);
}

void write_frequency_csv(std::ostream& os, const SpectralResult& r) {
  const auto flags = os.flags();
  os << "mode_index,omega_rad_s,Omega_normalized,style\n" << std::setprecision(10);
  for (std::size_t j = 0; j < r.omega.size(); ++j)
    os << j + 1 << ',' << r.omega[j] << ',' << r.Omega[j] << ',' << to_string(r.style) << '\n';
  os.flags(flags);
}

}  // namespace fgm
