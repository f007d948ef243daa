#pragma once

#include "fgm/errors.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace fgm {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct EigenOptions {
  double tolerance = 1e-8;        // relative residual |A x - l B x| / |l B x|
  int dense_threshold = 500;      // below this size the pencil is solved densely
  int max_restarts = 6;
};

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // B-orthonormal columns
  Eigen::VectorXd residuals;
  double shift = 0.0;
};

/// Smallest `count` eigenpairs of the symmetric pencil (A, B) with B positive
/// definite. Uses block shift-invert Krylov iterations with full
/// B-orthogonalization and Rayleigh-Ritz extraction on (A, B).
EigenPairs smallest_eigenpairs(const SparseMatrix& A, const SparseMatrix& B, int count,
                               const EigenOptions& options = {});

}  // namespace fgm
