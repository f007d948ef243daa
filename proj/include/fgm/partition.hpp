#pragma once

#include "fgm/geometry.hpp"

#include <array>
#include <vector>

namespace fgm {

struct SubTriangle {
  std::array<Vec2, 3> v;
  bool material = true;

  double area() const;
  Vec2 centroid() const;
};

struct PartitionOptions {
  /// The element is first split into n x n parametric sub-quads (each fanned
  /// into four triangles) so that curved rims are followed by short chords.
  int subdivisions = 6;
  /// Triangles smaller than this fraction of the element area are dropped.
  double sliver_fraction = 1e-12;
};

/// Triangulates a convex quadrilateral element so that no triangle straddles
/// a cutout rim (chordal approximation from exact level-set values at the
/// triangle vertices) or a crack segment. Crack segments that end inside the
/// element become triangle vertices. Triangles inside any cutout are flagged
/// as void.
std::vector<SubTriangle> partition_cut_element(const std::array<Vec2, 4>& corners,
                                               const DiscontinuitySet& geometry,
                                               const PartitionOptions& options = {});

/// Parametric (s x s x 4) base triangulation used by the partitioner.
std::vector<SubTriangle> base_triangulation(const std::array<Vec2, 4>& corners, int subdivisions);

/// Splits triangles crossed by the segment [p, q] so that the segment runs
/// along triangle edges.
std::vector<SubTriangle> split_along_segment(std::vector<SubTriangle> triangles, const Vec2& p,
                                             const Vec2& q, double eps);

/// Clip of the segment [p, q] against a convex counter-clockwise polygon.
/// Returns false when they do not meet; otherwise t0 <= t1 are the segment
/// parameters of the overlap.
bool clip_segment(const Vec2& p, const Vec2& q, const std::vector<Vec2>& polygon, double& t0,
                  double& t1);

bool point_in_convex_polygon(const Vec2& x, const std::vector<Vec2>& polygon, double eps);

double distance_to_polygon_boundary(const Vec2& x, const std::vector<Vec2>& polygon);

}  // namespace fgm
