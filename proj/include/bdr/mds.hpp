#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

#include <Eigen/Core>

#include "bdr/error.hpp"
#include "bdr/graph.hpp"

namespace bdr {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Symmetric, zero diagonal, nonnegative pairwise distances.
using DistanceMatrix = MatrixX<double>;

// Unweighted shortest-path hop counts. Throws EmbeddingError if `sub` is
// not connected.
DistanceMatrix hop_distance_matrix(const ConnectivityGraph& sub);

// Shortest paths where a Strong link counts 0.5 and a Weak link 1.0.
DistanceMatrix signal_distance_matrix(const ConnectivityGraph& sub);

template <typename Scalar>
struct LocalEmbeddingT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> coords;
  NodeId center = 0;

  std::size_t size() const { return static_cast<std::size_t>(coords.rows()); }
  Eigen::Matrix<Scalar, 2, 1> at(NodeId i) const { return coords.row(i).transpose(); }
};
using LocalEmbedding = LocalEmbeddingT<double>;

template <typename Scalar>
struct TopEigenpairs {
  Eigen::Matrix<Scalar, 2, 1> values;                    // descending
  Eigen::Matrix<Scalar, Eigen::Dynamic, 2> vectors;  // orthonormal columns
  int iterations = 0;
};

namespace detail {

template <typename Scalar>
void orthonormalize(Eigen::Matrix<Scalar, Eigen::Dynamic, 2>& v) {
  // Modified Gram-Schmidt, twice for stability.
  for (int pass = 0; pass < 2; ++pass) {
    v.col(0).normalize();
    v.col(1) -= v.col(0).dot(v.col(1)) * v.col(0);
  }
  const Scalar norm = v.col(1).norm();
  if (norm < Scalar(1e-300)) {
    // Second direction collapsed; replace with a fixed vector orthogonal to the first.
    v.col(1).setZero();
    const Eigen::Index k = v.rows() > 1 ? 1 : 0;
    v(k, 1) = 1;
    v.col(1) -= v.col(0).dot(v.col(1)) * v.col(0);
  }
  v.col(1).normalize();
}

// Eigen-decomposition of a symmetric 2x2 [a b; b c], eigenvalues descending.
template <typename Scalar>
void symmetric_2x2(Scalar a, Scalar b, Scalar c, Eigen::Matrix<Scalar, 2, 1>& values,
                   Eigen::Matrix<Scalar, 2, 2>& vectors) {
  const Scalar mean = (a + c) / 2;
  const Scalar radius = std::hypot((a - c) / 2, b);
  values << mean + radius, mean - radius;
  if (radius == Scalar(0)) {
    vectors.setIdentity();
    return;
  }
  const Scalar theta = std::atan2(2 * b, a - c) / 2;
  vectors << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
}

}  // namespace detail

// Two algebraically largest eigenpairs of a symmetric matrix by block power
// iteration with Rayleigh-Ritz extraction. The iteration runs on B + shift*I
// with a Gershgorin shift so that negative eigenvalues cannot dominate.
// Stops once the Ritz residual drops below tol relative to the largest
// eigenvalue (floored near machine precision for float); throws
// EmbeddingError after max_iterations.
template <typename Derived>
TopEigenpairs<typename Derived::Scalar> top2_symmetric_eigenpairs(
    const Eigen::MatrixBase<Derived>& b, typename Derived::Scalar tol = 1e-10,
    int max_iterations = 10000) {
  using Scalar = typename Derived::Scalar;
  using Block = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;
  const Eigen::Index n = b.rows();
  if (n < 2 || b.cols() != n) throw EmbeddingError("eigen-solver needs a square matrix of size >= 2");

  Scalar shift = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    shift = std::max(shift, b.row(i).cwiseAbs().sum() - std::abs(b(i, i)) - b(i, i));

  // Fixed pseudo-random start block, identical on every run.
  Block v(n, 2);
  std::uint64_t state = 0x2545f4914f6cdd1dULL;
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j) {
      state ^= state << 13;
      state ^= state >> 7;
      state ^= state << 17;
      v(i, j) = static_cast<Scalar>(state >> 11) * Scalar(0x1.0p-53) - Scalar(0.5);
    }
  detail::orthonormalize(v);

  const Scalar limit = std::max(tol, Scalar(64) * std::numeric_limits<Scalar>::epsilon());
  TopEigenpairs<Scalar> out;
  Eigen::Matrix<Scalar, 2, 1> ritz;
  Eigen::Matrix<Scalar, 2, 2> rot;
  Block w(n, 2), ritz_vectors(n, 2);
  for (int it = 1; it <= max_iterations; ++it) {
    w.noalias() = b * v;
    w += shift * v;
    const Eigen::Matrix<Scalar, 2, 2> h = v.transpose() * w;
    detail::symmetric_2x2(h(0, 0), Scalar((h(0, 1) + h(1, 0)) / 2), h(1, 1), ritz, rot);
    ritz_vectors.noalias() = v * rot;
    v.noalias() = w * rot;
    // Residual of the Ritz pairs; small residual bounds the vector error
    // too, not just the eigenvalue error.
    const Scalar residual = (v - ritz_vectors * ritz.asDiagonal()).norm();
    detail::orthonormalize(v);
    if (residual <= limit * std::max<Scalar>(1, std::abs(ritz(0)))) {
      out.iterations = it;
      break;
    }
    if (it == max_iterations) throw EmbeddingError("eigen-solver did not converge");
  }

  // Final Rayleigh-Ritz on the converged block.
  w.noalias() = b * v;
  const Eigen::Matrix<Scalar, 2, 2> h = v.transpose() * w;
  detail::symmetric_2x2(h(0, 0), Scalar((h(0, 1) + h(1, 0)) / 2), h(1, 1), out.values, rot);
  out.vectors = v * rot;
  for (int j = 0; j < 2; ++j) {
    Eigen::Index arg;
    out.vectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.vectors(arg, j) < 0) out.vectors.col(j) *= -1;
  }
  return out;
}

// Double centering: B = -1/2 J D^2 J with J = I - 11^T/n.
template <typename Derived>
MatrixX<typename Derived::Scalar> double_center_squared(const Eigen::MatrixBase<Derived>& d) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> sq = d.cwiseProduct(d);
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row_mean = sq.rowwise().mean();
  const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> col_mean = sq.colwise().mean();
  const Scalar grand = sq.mean();
  MatrixX<Scalar> b = sq;
  b.colwise() -= row_mean;
  b.rowwise() -= col_mean;
  b.array() += grand;
  return Scalar(-0.5) * b;
}

// Classical (Torgerson) MDS into the plane. Negative eigenvalues clamp to
// zero, which collapses the corresponding axis.
template <typename Derived>
LocalEmbeddingT<typename Derived::Scalar> classical_mds_2d(const Eigen::MatrixBase<Derived>& d,
                                                           NodeId center = 0) {
  using Scalar = typename Derived::Scalar;
  if (d.rows() < 3) throw EmbeddingError("classical MDS needs at least 3 points");
  if (d.cols() != d.rows()) throw EmbeddingError("distance matrix must be square");
  const auto pairs = top2_symmetric_eigenpairs(double_center_squared(d));
  LocalEmbeddingT<Scalar> emb;
  emb.center = center;
  emb.coords = pairs.vectors;
  for (int j = 0; j < 2; ++j) emb.coords.col(j) *= std::sqrt(std::max(pairs.values(j), Scalar(0)));
  return emb;
}

}  // namespace bdr
