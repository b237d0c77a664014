#include "spectral/matdecomp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectral/error.hpp"
#include "spectral/kernels/kernels.hpp"
#include "spectral/symmetry.hpp"

namespace spectral {

namespace {

constexpr int kMaxSweeps = 30;
constexpr int kMaxSvdSweeps = 60;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

// order[k] = index of the k-th largest value; stable on ties
std::vector<std::size_t> descending_order(const Vec& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  return order;
}

Matrix permute_rows(const Matrix& m, const std::vector<std::size_t>& order) {
  Matrix out(order.size(), m.cols());
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto src = m.row(order[k]);
    std::copy(src.begin(), src.end(), out.row(k).begin());
  }
  return out;
}

// Orthonormalize the rows of q from row `from` on against all earlier rows.
// A degenerate row is replaced by the standard basis vector with the
// largest residual against the earlier rows.
void complete_rows(Matrix& q, std::size_t from) {
  const std::size_t n = q.cols();
  auto orthogonalize = [&](std::span<double> r, std::size_t upto) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < upto; ++k) kernels::axpy(-kernels::dot(q.row(k), r), q.row(k), r);
    return norm2(r);
  };
  for (std::size_t i = from; i < q.rows(); ++i) {
    auto ri = q.row(i);
    double nr = orthogonalize(ri, i);
    if (nr <= 0.5) {
      Vec best(n), e(n);
      double best_nr = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        std::fill(e.begin(), e.end(), 0.0);
        e[k] = 1.0;
        double en = orthogonalize(e, i);
        if (en > best_nr) {
          best_nr = en;
          best = e;
        }
      }
      if (best_nr < 1e-8) throw Error("cannot complete orthonormal basis");
      std::copy(best.begin(), best.end(), ri.begin());
      nr = orthogonalize(ri, i);
    }
    for (double& v : ri) v /= nr;
  }
}

}  // namespace

Matrix symmetrize(const Matrix& x) {
  if (!x.square()) throw InputError("matrix is not square");
  if (!x.all_finite()) throw InputError("matrix has non-finite entries");
  Matrix s(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) s(i, j) = 0.5 * (x(i, j) + x(j, i));
  return s;
}

bool is_symmetric(const Matrix& x, double tol) {
  if (!x.square()) return false;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = i + 1; j < x.cols(); ++j)
      if (std::abs(x(i, j) - x(j, i)) > tol) return false;
  return true;
}

double default_grouping_tol(const Matrix& x) { return 1e-8 * (1.0 + x.frobenius_norm()); }

EigenPair eig_sym(const Matrix& x) {
  Matrix a = symmetrize(x);
  const std::size_t n = a.rows();
  Matrix u = Matrix::identity(n);
  const double target = 1e-14 * a.frobenius_norm();

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = off_diagonal_norm(a);
    if (off <= target) break;
    // early sweeps skip small entries so the large ones are annihilated first
    double thresh = sweep < 3 ? 0.2 * off / static_cast<double>(n * n) : 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (apq == 0.0 || std::abs(apq) < thresh) continue;
        double app = a(p, p), aqq = a(q, q);
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        // A <- J^T A J: rotate rows p,q, mirror into columns, then fix the
        // 2x2 block in closed form.
        kernels::rotate(a.row(p), a.row(q), c, s);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = a(p, k);
          a(k, q) = a(q, k);
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        kernels::rotate(u.row(p), u.row(q), c, s);
      }
    }
  }

  Vec d = a.diag();
  auto order = descending_order(d);
  EigenPair e;
  e.lambda.resize(n);
  for (std::size_t k = 0; k < n; ++k) e.lambda[k] = d[order[k]];
  e.U = permute_rows(u, order);
  return e;
}

Matrix conjugate_by(const Matrix& u, const Matrix& x) {
  if (!u.square() || !x.square() || u.rows() != x.rows())
    throw InputError("conjugate_by: dimension mismatch");
  return symmetrize(u.transpose() * x * u);
}

Matrix diag_embed(std::span<const double> v) { return Matrix::diagonal(v); }

Matrix diag_embed_rect(std::span<const double> v, std::size_t n, std::size_t m) {
  if (v.size() > std::min(n, m)) throw InputError("diag_embed_rect: vector too long");
  Matrix d(n, m);
  for (std::size_t i = 0; i < v.size(); ++i) d(i, i) = v[i];
  return d;
}

SVDTriple svd(const Matrix& a) {
  if (!a.all_finite()) throw InputError("matrix has non-finite entries");
  const std::size_t n = a.rows(), m = a.cols();
  if (n < m) throw InputError("svd expects rows >= cols; pass the transpose");
  Matrix b = a.transpose();  // rows of b are the columns of a
  Matrix qt = Matrix::identity(m);

  for (int sweep = 0; sweep < kMaxSvdSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        double alpha = kernels::dot(b.row(p), b.row(p));
        double beta = kernels::dot(b.row(q), b.row(q));
        double gamma = kernels::dot(b.row(p), b.row(q));
        if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        rotated = true;
        double zeta = (beta - alpha) / (2.0 * gamma);
        double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        kernels::rotate(b.row(p), b.row(q), c, s);
        kernels::rotate(qt.row(p), qt.row(q), c, s);
      }
    }
    if (!rotated) break;
  }

  Vec norms(m);
  for (std::size_t j = 0; j < m; ++j) norms[j] = norm2(b.row(j));
  auto order = descending_order(norms);

  SVDTriple out;
  out.sigma.resize(m);
  out.V = permute_rows(qt, order);
  out.U = Matrix(n, n);
  double smax = m > 0 ? norms[order[0]] : 0.0;
  std::size_t filled = 0;
  for (std::size_t k = 0; k < m; ++k) {
    double sk = norms[order[k]];
    out.sigma[k] = sk;
    if (sk > 0.0 && sk > 1e-13 * smax) {
      auto src = b.row(order[k]);
      auto dst = out.U.row(k);
      for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] / sk;
      filled = k + 1;
    } else {
      break;
    }
  }
  complete_rows(out.U, filled);
  return out;
}

Matrix stabilizer_sample(const EigenPair& e, double grouping_tol, std::uint64_t seed) {
  const std::size_t n = e.lambda.size();
  std::mt19937_64 rng(seed);
  Partition p = partition_of(e.lambda, grouping_tol);
  Matrix w(n, n);
  for (const auto& block : p.blocks) {
    if (block.size() == 1) {
      w(block[0], block[0]) = (rng() & 1u) ? -1.0 : 1.0;
      continue;
    }
    Matrix r = random_orthogonal(block.size(), rng);
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = 0; j < block.size(); ++j) w(block[i], block[j]) = r(i, j);
  }
  return w * e.U;
}

Matrix reconstruct(const EigenPair& e) { return conjugate_by(e.U, Matrix::diagonal(e.lambda)); }

Matrix reconstruct(const SVDTriple& s) {
  return s.U.transpose() * diag_embed_rect(s.sigma, s.U.rows(), s.V.rows()) * s.V;
}

}  // namespace spectral
