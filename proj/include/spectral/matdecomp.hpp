#pragma once
// Symmetric eigendecomposition, SVD and orthogonal conjugation.
//
// Convention throughout the library: X = U^T Diag(lambda) U, i.e. the
// eigenvectors are the ROWS of U. Likewise A = U^T Diag(sigma) V for the
// SVD, with Diag the n x m rectangular embedding.

#include <cstdint>

#include "spectral/matrix.hpp"

namespace spectral {

struct EigenPair {
  Matrix U;    // n x n orthogonal, rows are eigenvectors
  Vec lambda;  // nonincreasing
};

struct SVDTriple {
  Matrix U;   // n x n orthogonal
  Matrix V;   // m x m orthogonal
  Vec sigma;  // m entries, nonnegative, nonincreasing
};

/// (X + X^T) / 2 after checking the shape and finiteness. Every routine
/// that takes a symmetric matrix calls this first.
Matrix symmetrize(const Matrix& x);
bool is_symmetric(const Matrix& x, double tol);

/// 1e-8 * (1 + ||X||_F)
double default_grouping_tol(const Matrix& x);

/// Cyclic Jacobi with threshold. Deterministic: fixed sweep order.
EigenPair eig_sym(const Matrix& x);

/// U^T X U
Matrix conjugate_by(const Matrix& u, const Matrix& x);

Matrix diag_embed(std::span<const double> v);
/// n x m matrix carrying v (length <= min(n,m)) on its diagonal.
Matrix diag_embed_rect(std::span<const double> v, std::size_t n, std::size_t m);

/// One-sided Jacobi on the columns of A. Requires rows >= cols; callers
/// with a wide matrix pass its transpose.
SVDTriple svd(const Matrix& a);

/// W * U where W is block-orthogonal with respect to the grouping of
/// E.lambda at grouping_tol: a Haar rotation per repeated block and a
/// random sign on singletons.
Matrix stabilizer_sample(const EigenPair& e, double grouping_tol, std::uint64_t seed);

/// U^T Diag(lambda) U
Matrix reconstruct(const EigenPair& e);
Matrix reconstruct(const SVDTriple& s);

}  // namespace spectral
