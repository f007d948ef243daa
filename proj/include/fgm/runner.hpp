#pragma once

#include "fgm/config.hpp"
#include "fgm/system.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fgm {

struct RunOptions {
  int threads = 1;
  bool eigen = true;
  bool static_solve = false;  // also forced by output.static_field
};

struct CenterlinePoint {
  double x = 0.0;
  double w = 0.0;
};

struct CaseResult {
  DiscreteSystem system;
  SpectralResult spectrum;             // empty when eigen is off
  std::vector<CenterlinePoint> centerline;  // filled by the static solve
  std::vector<std::string> warnings;
};

/// Material -> section -> geometry -> assembly -> solve. Errors keep their
/// type and get the failing stage prefixed to the message.
CaseResult run_case(const CaseConfig& config, const RunOptions& options = {});

/// Writes the files requested in config.output; returns their paths.
std::vector<std::string> write_case_outputs(const CaseConfig& config, const CaseResult& result);

/// Transverse deflection at the mesh nodes on the row nearest y = b/2.
/// Nodes inside a cutout are skipped.
std::vector<CenterlinePoint> centerline_deflection(const DiscreteSystem& system,
                                                   const DiscontinuitySet& geometry,
                                                   const Eigen::VectorXd& u);

struct SweepTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write_csv(std::ostream& os) const;
};

/// One row per parameter tuple in expansion order; failures land in the
/// error column and the sweep goes on. Rows may run on `threads` workers.
SweepTable run_sweep(const SweepSpec& sweep, int threads = 1);

struct ReferenceValue {
  std::string table;
  std::string row;
  std::string column;
  double value = 0.0;
  std::string provenance;
};

/// One computed case of a reproduction table and the published cells it
/// covers (mode index, reference).
struct TableCase {
  std::string row;
  CaseConfig config;
  std::vector<std::pair<int, ReferenceValue>> cells;
};

struct ReproduceOptions {
  int threads = 1;
  std::optional<std::pair<int, int>> mesh;  // overrides every table but T4
};

/// Identifiers accepted by reproduce_table.
const std::vector<std::string>& table_ids();

std::vector<TableCase> table_cases(const std::string& id, const ReproduceOptions& options = {});

struct ComparisonRow {
  ReferenceValue reference;
  double computed = 0.0;
  double relative_error = 0.0;
  std::string error;  // non-empty when the case failed
};

struct TableCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct TableReport {
  std::string id;
  double threshold = 0.0;  // relative error allowed per cell
  std::vector<ComparisonRow> rows;
  std::vector<TableCheck> checks;

  double max_relative_error() const;
  bool passed() const;
  void write_csv(std::ostream& os) const;
};

TableReport reproduce_table(const std::string& id, const ReproduceOptions& options = {});

}  // namespace fgm
