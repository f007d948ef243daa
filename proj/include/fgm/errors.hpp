#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fgm {

/// Failures of the discretization or the solvers, as opposed to bad input
/// (reported as std::invalid_argument / std::domain_error).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Inverted or degenerate elements.
struct MeshError : NumericalError {
  using NumericalError::NumericalError;
};

/// Stiffness left singular by the boundary conditions.
struct ConstraintError : NumericalError {
  using NumericalError::NumericalError;
};

struct NonConvergence : NumericalError {
  NonConvergence(const std::string& what, std::vector<double> res)
      : NumericalError(what), residuals(std::move(res)) {}
  std::vector<double> residuals;
};

}  // namespace fgm
