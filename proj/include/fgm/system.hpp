#pragma once

#include "fgm/classify.hpp"
#include "fgm/eigensolver.hpp"
#include "fgm/element.hpp"
#include "fgm/mesh.hpp"
#include "fgm/section.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <vector>

namespace fgm {

/// Global numbering. Each live node owns a contiguous block of
/// 5 x (1 + heaviside + 4 tip) dofs laid out in the same function order as
/// the element layouts; eliminated nodes own none.
struct DofMap {
  std::vector<int> node_start;      // -1 for eliminated nodes
  std::vector<int> node_functions;  // enrichment functions per node (incl. standard)
  int num_dofs = 0;

  /// Global dofs of an element in its local layout order.
  std::vector<int> element_dofs(const Mesh& mesh, std::size_t e) const;
  /// Global dof of the standard function of `node` for `field`, or -1.
  int standard_dof(int node, int field) const;
};

DofMap build_dof_map(const Mesh& mesh, const EnrichmentPlan& plan);

/// Sorted constrained dofs. Enriched dofs of boundary nodes follow their
/// field.
std::vector<int> apply_boundary_conditions(const Mesh& mesh, BoundaryCondition bc,
                                           const DofMap& dofs);

struct DiscreteSystem {
  Mesh mesh;
  EnrichmentPlan plan;
  DofMap dofs;
  BoundaryCondition bc = BoundaryCondition::SSSS;
  std::vector<int> constrained;
  std::vector<int> free_dofs;       // reduced index -> global dof
  std::vector<int> reduced_index;   // global dof -> reduced index or -1
  SparseMatrix K;
  SparseMatrix KG;
  SparseMatrix M;
  Eigen::VectorXd F;  // thermal load

  SparseMatrix reduce(const SparseMatrix& A) const;
  Eigen::VectorXd reduce(const Eigen::VectorXd& v) const;
  /// Scatters a reduced vector back to all dofs (constrained entries zero).
  Eigen::VectorXd expand(const Eigen::VectorXd& v) const;
};

struct AssemblyOptions {
  QuadratureSpec quadrature;
  int threads = 1;
};

DiscreteSystem assemble(const Mesh& mesh, const EnrichmentPlan& plan,
                        const SectionProperties& section, BoundaryCondition bc,
                        const AssemblyOptions& options = {});

/// Nodal standard dofs (u0, v0, w0, theta_x, theta_y); NaN rows for
/// eliminated nodes.
Eigen::MatrixXd nodal_field(const DiscreteSystem& system, const Eigen::VectorXd& u);

/// Solves K u = F_th on the free dofs and returns the full dof vector.
Eigen::VectorXd solve_static_thermal(const DiscreteSystem& system);

enum class NormalizationStyle { main, table3, table4 };

NormalizationStyle parse_normalization(const std::string& s);
std::string to_string(NormalizationStyle s);

/// Reference constants entering the normalized frequency.
struct NormalizationReference {
  double a = 0.0;
  double h = 0.0;
  double E_c = 0.0;   // nominal, P0
  double rho_c = 0.0;
  double nu_c = 0.0;
  double E_m = 0.0;   // at T0
  double rho_m = 0.0;
  double nu_m = 0.0;
};

/// The ceramic modulus is its nominal coefficient P0 (the tabulated value
/// before the temperature polynomial); the metal modulus is taken at T0.
NormalizationReference normalization_reference(const MaterialSystem& sys, double a, double h,
                                               double T0);

double normalize_frequency(double omega, NormalizationStyle style,
                           const NormalizationReference& ref);

struct SpectralResult {
  std::vector<double> lambda;   // eigenvalues of (K + KG, M), ascending
  std::vector<double> omega;    // rad/s, NaN when buckled
  std::vector<bool> buckled;    // lambda <= 0
  std::vector<double> Omega;    // normalized, NaN when buckled
  std::vector<double> residuals;
  NormalizationStyle style = NormalizationStyle::main;
  Eigen::MatrixXd modes;        // full dof vectors, M-orthonormal
};

struct SolveOptions {
  EigenOptions eigen;
  bool include_geometric = true;
};

SpectralResult solve_eigen(const DiscreteSystem& system, int n_modes,
                           const SolveOptions& options = {});

void apply_normalization(SpectralResult& result, NormalizationStyle style,
                         const NormalizationReference& ref);

/// Header "nx ny n_modes", then per mode a "mode <index> <omega>" line and
/// one "x y w theta_x theta_y" record per node.
void write_mode_shapes(std::ostream& os, const DiscreteSystem& system, const SpectralResult& r);

/// CSV with columns mode_index,omega_rad_s,Omega_normalized,style.
void write_frequency_csv(std::ostream& os, const SpectralResult& r);

}  // namespace fgm
