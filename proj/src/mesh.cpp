#include "fgm/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace fgm {

BoundaryCondition parse_boundary_condition(const std::string& s) {
  if (s == "SSSS") return BoundaryCondition::SSSS;
  if (s == "CCCC") return BoundaryCondition::CCCC;
  throw std::invalid_argument("unknown boundary condition '" + s + "' (expected SSSS or CCCC)");
}

std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::SSSS ? "SSSS" : "CCCC";
}

void PlateSpec::validate() const {
  if (!(a > 0.0 && b > 0.0 && h > 0.0) || !std::isfinite(a) || !std::isfinite(b) ||
      !std::isfinite(h))
    throw std::invalid_argument("plate dimensions a, b, h must be positive and finite");
  if (nx < 2 || ny < 2) throw std::invalid_argument("mesh needs at least 2 x 2 elements");
}

std::array<Vec2, 4> Mesh::corners(std::size_t e) const {
  const auto& c = elements[e];
  return {nodes[c[0]], nodes[c[1]], nodes[c[2]], nodes[c[3]]};
}

double Mesh::element_size() const {
  if (elements.empty()) return 0.0;
  return std::sqrt(a * b / static_cast<double>(elements.size()));
}

std::vector<std::vector<int>> Mesh::node_elements() const {
  std::vector<std::vector<int>> out(nodes.size());
  for (std::size_t e = 0; e < elements.size(); ++e)
    for (int n : elements[e]) out[n].push_back(static_cast<int>(e));
  return out;
}

Mesh generate_mesh(const PlateSpec& spec) {
  spec.validate();
  Mesh m;
  m.a = spec.a;
  m.b = spec.b;
  m.nx = spec.nx;
  m.ny = spec.ny;
  m.nodes.reserve(static_cast<std::size_t>(spec.nx + 1) * (spec.ny + 1));
  for (int j = 0; j <= spec.ny; ++j)
    for (int i = 0; i <= spec.nx; ++i)
      m.nodes.emplace_back(spec.a * i / spec.nx, spec.b * j / spec.ny);
  const int row = spec.nx + 1;
  m.elements.reserve(static_cast<std::size_t>(spec.nx) * spec.ny);
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) {
      const int n0 = j * row + i;
      m.elements.push_back({n0, n0 + 1, n0 + 1 + row, n0 + row});
    }
  return m;
}

Mesh renumber_nodes(const Mesh& mesh, const std::vector<int>& new_index) {
  if (new_index.size() != mesh.nodes.size())
    throw std::invalid_argument("renumbering must cover every node");
  Mesh out = mesh;
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i) out.nodes[new_index[i]] = mesh.nodes[i];
  for (auto& el : out.elements)
    for (int& n : el) n = new_index[n];
  return out;
}

}  // namespace fgm
