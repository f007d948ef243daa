#pragma once

#include "fgm/mesh.hpp"
#include "fgm/partition.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fgm {

enum class ElementCategory {
  non_enriched,
  tip,
  tip_blending,
  split,
  split_blending,
  split_tip_blending,
  cut_by_void,
  void_element,
};

std::string to_string(ElementCategory c);

struct NodeEnrichment {
  bool eliminated = false;     // no material in any adjacent element
  std::vector<int> heaviside;  // crack ids
  std::vector<int> tip;        // crack ids
  bool enriched() const { return !heaviside.empty() || !tip.empty(); }
};

struct EnrichmentPlan {
  /// Geometry actually used for enrichment: tips nudged off mesh lines and
  /// mouths on cutout rims pushed back into the void.
  DiscontinuitySet geometry;
  std::vector<ElementCategory> categories;
  /// Sub-triangulation for elements that need one (empty otherwise).
  std::vector<std::vector<SubTriangle>> partitions;
  std::vector<NodeEnrichment> nodes;
  /// Element holding each crack tip.
  std::vector<int> tip_elements;
  std::vector<std::string> warnings;

  std::size_t count(ElementCategory c) const;
  std::size_t num_eliminated() const;
};

struct ClassifyOptions {
  PartitionOptions partition;
  /// A node gets the step enrichment only if each side of the crack holds at
  /// least this fraction of the material area of its cut support.
  double side_area_fraction = 1e-4;
  /// Mouths hosted on a cutout are extended into the void by this many
  /// element lengths.
  double mouth_extension = 1.5;
};

/// Checks cutouts and cracks against the plate and throws
/// std::invalid_argument on malformed input.
void validate_discontinuities(const DiscontinuitySet& geometry, double a, double b);

EnrichmentPlan classify(const Mesh& mesh, const DiscontinuitySet& geometry,
                        const ClassifyOptions& options = {});

/// Text dump: one "element <id> <category>" line per element followed by
/// "tri x0 y0 x1 y1 x2 y2 <material|void>" lines of its partition.
void write_plan_dump(std::ostream& os, const Mesh& mesh, const EnrichmentPlan& plan);

}  // namespace fgm
