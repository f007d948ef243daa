#pragma once

#include "fgm/geometry.hpp"

#include <array>
#include <string>
#include <vector>

namespace fgm {

enum class BoundaryCondition { SSSS, CCCC };

BoundaryCondition parse_boundary_condition(const std::string& s);
std::string to_string(BoundaryCondition bc);

struct PlateSpec {
  double a = 1.0;  // length along x
  double b = 1.0;  // width along y
  double h = 0.1;  // thickness
  int nx = 40;
  int ny = 40;
  BoundaryCondition bc = BoundaryCondition::SSSS;

  void validate() const;
  bool operator==(const PlateSpec&) const = default;
};

/// Quadrilateral mesh of the rectangle [0, a] x [0, b]. Element corners are
/// listed counter-clockwise.
struct Mesh {
  double a = 0.0;
  double b = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 4>> elements;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_elements() const { return elements.size(); }
  std::array<Vec2, 4> corners(std::size_t e) const;
  /// Characteristic element length (square root of the mean element area).
  double element_size() const;
  /// Elements touching each node.
  std::vector<std::vector<int>> node_elements() const;
};

Mesh generate_mesh(const PlateSpec& spec);

/// Same geometry with nodes relabelled by `new_index[old] = new`.
Mesh renumber_nodes(const Mesh& mesh, const std::vector<int>& new_index);

}  // namespace fgm
