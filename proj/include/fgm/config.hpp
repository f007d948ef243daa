#pragma once

#include "fgm/geometry.hpp"
#include "fgm/material.hpp"
#include "fgm/mesh.hpp"
#include "fgm/system.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fgm {

struct MaterialConfig {
  std::string system = "Si3N4/SUS304";  // or "custom"
  std::optional<ConstituentSpec> ceramic;  // required for "custom"
  std::optional<ConstituentSpec> metal;
  double k = 0.0;
  std::optional<double> nu_fixed = 0.28;
  double shear_correction = 5.0 / 6.0;

  MaterialSystem resolve() const;
  bool operator==(const MaterialConfig&) const = default;
};

struct CutoutConfig {
  std::string type = "circle";  // circle | ellipse
  Vec2 center = Vec2(0.5, 0.5);
  double radius = 0.0;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double orientation_deg = 0.0;

  Cutout resolve() const;
  bool operator==(const CutoutConfig&) const = default;
};

/// A straight crack given by its mouth anchor, direction and length. The
/// anchor is either a rim point of a cutout (polar angle from its center)
/// or an absolute point on the plate edge. Without an explicit direction a
/// rim crack runs radially outwards.
struct CrackConfig {
  std::optional<int> cutout;
  std::optional<double> angle_deg;
  std::optional<Vec2> point;
  std::optional<double> direction_deg;
  double length = 0.0;

  Crack resolve(const std::vector<Cutout>& cutouts) const;
  bool operator==(const CrackConfig&) const = default;
};

struct GeometryConfig {
  std::vector<CutoutConfig> cutouts;
  std::vector<CrackConfig> cracks;

  DiscontinuitySet resolve() const;
  bool operator==(const GeometryConfig&) const = default;
};

struct SolverConfig {
  int n_modes = 3;
  NormalizationStyle normalization = NormalizationStyle::main;
  double tolerance = 1e-8;

  bool operator==(const SolverConfig&) const = default;
};

struct OutputConfig {
  std::string directory = ".";
  std::string prefix = "case";
  bool frequencies = true;   // <prefix>_frequencies.csv
  bool mode_shapes = false;  // <prefix>_modes.txt
  bool static_field = false; // <prefix>_static.csv, w along y = b/2
  bool plan_dump = false;    // <prefix>_plan.txt

  bool operator==(const OutputConfig&) const = default;
};

struct CaseConfig {
  PlateSpec plate;
  MaterialConfig material;
  ThermalBC thermal;
  GeometryConfig geometry;
  SolverConfig solver;
  OutputConfig output;

  /// Range checks of every section; throws std::invalid_argument.
  void validate() const;
  bool operator==(const CaseConfig&) const = default;
};

/// Strict parse: unknown keys and wrong types are std::invalid_argument.
/// Missing keys take the defaults above.
CaseConfig case_from_json(const nlohmann::json& j);
nlohmann::json case_to_json(const CaseConfig& c);

CaseConfig parse_case(const std::string& text);
std::string dump_case(const CaseConfig& c);
CaseConfig load_case(const std::string& path);

struct SweepAxis {
  std::string parameter;  // dotted path into the case, e.g. "material.k" or "geometry.cutouts.0.orientation_deg"
  std::vector<double> values;

  bool operator==(const SweepAxis&) const = default;
};

struct SweepSpec {
  CaseConfig base;
  std::vector<SweepAxis> axes;  // one or two

  /// Cases in row order (first axis outermost). Each swept path must exist
  /// in the base case.
  std::vector<CaseConfig> expand() const;
  bool operator==(const SweepSpec&) const = default;
};

SweepSpec sweep_from_json(const nlohmann::json& j);
nlohmann::json sweep_to_json(const SweepSpec& s);
SweepSpec parse_sweep(const std::string& text);
SweepSpec load_sweep(const std::string& path);

/// Copy of `c` with the numeric value at the dotted path replaced.
CaseConfig with_parameter(const CaseConfig& c, const std::string& path, double value);

}  // namespace fgm
