#include "fgm/eigensolver.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace fgm {

namespace {

Eigen::VectorXd residuals_of(const SparseMatrix& A, const SparseMatrix& B,
                             const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors) {
  Eigen::VectorXd res(values.size());
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    const Eigen::VectorXd Bx = B * vectors.col(j);
    const Eigen::VectorXd r = A * vectors.col(j) - values(j) * Bx;
    const double scale = std::max(std::abs(values(j)) * Bx.norm(),
                                  std::numeric_limits<double>::min());
    res(j) = r.norm() / scale;
  }
  return res;
}

EigenPairs dense_pairs(const SparseMatrix& A, const SparseMatrix& B, int count) {
  const Eigen::MatrixXd Ad = Eigen::MatrixXd(A);
  const Eigen::MatrixXd Bd = Eigen::MatrixXd(B);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ad, Bd);
  if (es.info() != Eigen::Success) throw NumericalError("dense generalized eigensolver failed");
  EigenPairs out;
  out.values = es.eigenvalues().head(count);
  out.vectors = es.eigenvectors().leftCols(count);
  out.residuals = residuals_of(A, B, out.values, out.vectors);
  return out;
}

// B-orthonormal basis grown one vector at a time with two passes of
// classical Gram-Schmidt.
class Basis {
 public:
  Basis(const SparseMatrix& B, Eigen::Index n, Eigen::Index capacity)
      : B_(B), V_(n, capacity), BV_(n, capacity) {}

  bool add(Eigen::VectorXd x) {
    if (size_ == V_.cols()) return false;
    const double initial = std::sqrt(std::max(x.dot(B_ * x), 0.0));
    if (!(initial > 0.0)) return false;
    for (int pass = 0; pass < 2 && size_ > 0; ++pass) {
      const Eigen::VectorXd c = BV_.leftCols(size_).transpose() * x;
      x.noalias() -= V_.leftCols(size_) * c;
    }
    Eigen::VectorXd Bx = B_ * x;
    const double norm = std::sqrt(std::max(x.dot(Bx), 0.0));
    if (!(norm > 1e-10 * initial)) return false;
    V_.col(size_) = x / norm;
    BV_.col(size_) = Bx / norm;
    ++size_;
    return true;
  }

  Eigen::Index size() const { return size_; }
  bool full() const { return size_ == V_.cols(); }
  auto V() const { return V_.leftCols(size_); }
  auto BV() const { return BV_.leftCols(size_); }
  Eigen::VectorXd BV_col(Eigen::Index j) const { return BV_.col(j); }

 private:
  const SparseMatrix& B_;
  Eigen::MatrixXd V_;
  Eigen::MatrixXd BV_;
  Eigen::Index size_ = 0;
};

}  // namespace

EigenPairs smallest_eigenpairs(const SparseMatrix& A, const SparseMatrix& B, int count,
                               const EigenOptions& options) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || B.cols() != n)
    throw std::invalid_argument("eigenproblem matrices must be square and of equal size");
  if (count < 1 || count > n) throw std::invalid_argument("requested mode count out of range");
  if (n <= options.dense_threshold) return dense_pairs(A, B, count);

  double sigma = 0.0;
  Eigen::SimplicialLDLT<SparseMatrix> factor;
  auto factorize = [&](double s) {
    sigma = s;
    factor.compute(SparseMatrix(A - s * B));
    if (factor.info() != Eigen::Success)
      throw NumericalError("factorization of the shifted pencil failed");
  };
  auto well_conditioned = [&] {
    const Eigen::VectorXd d = factor.vectorD().cwiseAbs();
    return d.minCoeff() > 1e-13 * d.maxCoeff();
  };
  // The pole sits at zero unless the pencil is (nearly) singular there, in
  // which case a slightly negative shift keeps a semi-definite A definite.
  factor.compute(A);
  if (factor.info() != Eigen::Success || !well_conditioned()) {
    double ratio = 0.0;
    int samples = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double b = B.coeff(i, i);
      if (b > 0.0) {
        ratio += A.coeff(i, i) / b;
        ++samples;
      }
    }
    ratio = samples > 0 ? std::abs(ratio / samples) : 1.0;
    factorize(-1e-6 * (ratio > 0.0 ? ratio : 1.0));
  }

  std::mt19937_64 rng(20240521);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  auto random_vector = [&] {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = uni(rng);
    return v;
  };

  const int block = std::min(4, count);
  Eigen::Index m = std::min<Eigen::Index>(n, std::max(2 * count + 20, count + 30));
  // Random starts are filtered through the operator twice so stiff
  // components do not pollute the Rayleigh quotient.
  Eigen::MatrixXd start(n, block);
  for (int j = 0; j < block; ++j) {
    Eigen::VectorXd v = random_vector();
    for (int pass = 0; pass < 2; ++pass) v = factor.solve(B * v).eval();
    start.col(j) = v;
  }

  EigenPairs best;
  double previous = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
    Basis basis(B, n, m);
    for (Eigen::Index j = 0; j < start.cols(); ++j) basis.add(start.col(j));
    Eigen::Index lo = 0;
    while (!basis.full()) {
      const Eigen::Index hi = basis.size();
      if (lo == hi) {
        // Krylov space exhausted: continue from a fresh direction.
        Eigen::VectorXd v = random_vector();
        for (int pass = 0; pass < 2; ++pass) v = factor.solve(B * v).eval();
        basis.add(v);
        continue;
      }
      for (Eigen::Index j = lo; j < hi && !basis.full(); ++j) basis.add(factor.solve(basis.BV_col(j)));
      lo = hi;
    }

    const Eigen::MatrixXd V = basis.V();
    const Eigen::MatrixXd AV = A * V;
    Eigen::MatrixXd Ar = V.transpose() * AV;
    Ar = 0.5 * (Ar + Ar.transpose()).eval();
    Eigen::MatrixXd Br = V.transpose() * basis.BV();
    Br = 0.5 * (Br + Br.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> rr(Ar, Br);
    if (rr.info() != Eigen::Success) throw NumericalError("Rayleigh-Ritz step failed");

    // Polish with subspace iterations on a guarded block: the operator damps
    // the round-off that orthogonalization leaves in stiff components.
    const Eigen::Index guard = std::min<Eigen::Index>(V.cols(), count + 4);
    Eigen::MatrixXd X = V * rr.eigenvectors().leftCols(guard);
    Eigen::VectorXd values = rr.eigenvalues().head(guard);
    for (int sweep = 0; sweep < 2; ++sweep) {
      Eigen::MatrixXd W(n, guard);
      for (Eigen::Index j = 0; j < guard; ++j) W.col(j) = factor.solve(B * X.col(j));
      Eigen::MatrixXd Aw = W.transpose() * (A * W);
      Aw = 0.5 * (Aw + Aw.transpose()).eval();
      Eigen::MatrixXd Bw = W.transpose() * (B * W);
      Bw = 0.5 * (Bw + Bw.transpose()).eval();
      Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> sr(Aw, Bw);
      if (sr.info() != Eigen::Success) break;
      X = W * sr.eigenvectors();
      values = sr.eigenvalues();
    }

    best.values = values.head(count);
    best.vectors = X.leftCols(count);
    best.residuals = residuals_of(A, B, best.values, best.vectors);
    best.shift = sigma;
    const double worst = best.residuals.maxCoeff();
    if (worst < options.tolerance) return best;
    // Restarts that no longer reduce the residual have hit the round-off
    // floor of the pencil; a larger subspace will not help.
    if (worst > 0.5 * previous) break;
    previous = worst;

    // A shift far from the wanted cluster (thin plates put the lowest
    // eigenvalues many decades below the mean diagonal ratio) cannot
    // separate it; move the pole next to the current lowest Ritz value.
    const double lowest = best.values(0);
    const double target = lowest > 0.0 ? 0.5 * lowest : 1.5 * lowest;
    if (lowest != 0.0 && std::abs(sigma - target) > 0.25 * std::abs(lowest)) factorize(target);
    start = best.vectors;
    m = std::min<Eigen::Index>(n, 2 * m);
  }
  std::ostringstream msg;
  msg << "eigensolver did not reach relative residual " << options.tolerance << "; residuals:";
  for (Eigen::Index j = 0; j < best.residuals.size(); ++j) msg << ' ' << best.residuals(j);
  throw NonConvergence(msg.str(),
                       std::vector<double>(best.residuals.data(),
                                           best.residuals.data() + best.residuals.size()));
}

}  // namespace fgm
