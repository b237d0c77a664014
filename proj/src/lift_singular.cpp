#include <cmath>

#include "lift_detail.hpp"
#include "spectral/error.hpp"

namespace spectral {

namespace {

double resolve_tol(double tol, const Matrix& x) { return tol < 0 ? default_grouping_tol(x) : tol; }

SVDTriple checked_svd(const SpectralFn& f, const Matrix& x) {
  if (f.kind() != SpectralKind::singular) throw InputError("expected a singular-value function");
  if (!x.all_finite()) throw InputError("matrix has non-finite entries");
  if (x.rows() < x.cols()) throw InputError("pass the transpose of a wide matrix");
  if (x.cols() != f.dim()) throw InputError("matrix size does not match the function dimension");
  return svd(x);
}

}  // namespace

QVec rational_singular_values(const SVDTriple& s, double grouping_tol) {
  QVec q = snap_grouped(s.sigma, grouping_tol);
  for (auto& v : q)
    if (sgn(v) < 0) v = 0;
  return q;
}

double sing_value(const SpectralFn& f, const Matrix& x, double grouping_tol) {
  SVDTriple s = checked_svd(f, x);
  double tol = resolve_tol(grouping_tol, x);
  return detail::value_at(f.base(), detail::snap_to_face(f.base(), rational_singular_values(s, tol), s.sigma, tol),
                          s.sigma);
}

SingSubdiffCert sing_subdiff(const SpectralFn& f, const Matrix& x, double grouping_tol) {
  SingSubdiffCert c;
  c.svd = checked_svd(f, x);
  c.grouping_tol = resolve_tol(grouping_tol, x);
  c.sigma = detail::snap_to_face(f.base(), rational_singular_values(c.svd, c.grouping_tol), c.svd.sigma,
                                    c.grouping_tol);
  c.blocks = partition_of(c.svd.sigma, c.grouping_tol);
  if (!f.base().in_domain(c.sigma)) throw InputError("sigma(X) is outside the domain");
  c.vec_subdiff = subdiff(f.base(), c.sigma);
  return c;
}

bool sing_subdiff_membership(const SingSubdiffCert& cert, const Matrix& g, double tol) {
  const std::size_t n = cert.svd.U.rows(), m = cert.svd.V.rows();
  if (g.rows() != n || g.cols() != m) throw InputError("matrix size mismatch");
  if (!g.all_finite()) throw InputError("matrix has non-finite entries");
  Matrix h = cert.svd.U * g * cert.svd.V.transpose();
  const double scale = tol * (1.0 + g.frobenius_norm());
  // row blocks follow the column blocks; the extra rows join the zero block
  std::vector<long> col_block(m), row_block(n, -1);
  long zero_block = -1;
  for (std::size_t b = 0; b < cert.blocks.blocks.size(); ++b) {
    for (std::size_t i : cert.blocks.blocks[b]) col_block[i] = row_block[i] = static_cast<long>(b);
    if (sgn(cert.sigma[cert.blocks.blocks[b].front()]) == 0) zero_block = static_cast<long>(b);
  }
  if (zero_block < 0 && n > m) zero_block = static_cast<long>(cert.blocks.blocks.size());
  for (std::size_t i = m; i < n; ++i) row_block[i] = zero_block;
  double off = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (row_block[i] != col_block[j]) off += h(i, j) * h(i, j);
  if (std::sqrt(off) > scale) return false;
  Vec diag(m);
  for (std::size_t b = 0; b < cert.blocks.blocks.size(); ++b) {
    const auto& cols = cert.blocks.blocks[b];
    if (static_cast<long>(b) == zero_block) {
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < n; ++i)
        if (row_block[i] == zero_block) rows.push_back(i);
      Matrix sub(rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = h(rows[i], cols[j]);
      SVDTriple s = svd(sub);
      for (std::size_t j = 0; j < cols.size(); ++j) diag[cols[j]] = s.sigma[j];
      continue;
    }
    Matrix sub(cols.size(), cols.size());
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = h(cols[i], cols[j]);
    double asym = 0.0;
    for (std::size_t i = 0; i < cols.size(); ++i)
      for (std::size_t j = i + 1; j < cols.size(); ++j) asym += std::pow(sub(i, j) - sub(j, i), 2);
    if (std::sqrt(asym) > scale) return false;
    auto e = eig_sym(symmetrize(sub));
    for (std::size_t j = 0; j < cols.size(); ++j) diag[cols[j]] = e.lambda[j];
  }
  return detail::vector_test(cert.vec_subdiff, diag, SubdiffTest::member, tol);
}

Matrix sing_project(const VectorSet& q, const Matrix& x) {
  if (x.rows() < x.cols()) throw InputError("pass the transpose of a wide matrix");
  if (x.cols() != q.dim()) throw InputError("matrix size does not match the set dimension");
  SVDTriple s = svd(x);
  Vec p = q.project(s.sigma);
  return s.U.transpose() * diag_embed_rect(p, s.U.rows(), s.V.rows()) * s.V;
}

}  // namespace spectral
