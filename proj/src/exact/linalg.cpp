#include "spectral/exact/linalg.hpp"

#include "spectral/error.hpp"

namespace spectral {

std::vector<QVec> rref(std::vector<QVec> rows, std::size_t ncols, std::vector<std::size_t>* pivots) {
  std::size_t r = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = Rational(1) / rows[r][c];
    for (std::size_t j = c; j < ncols; ++j)
      if (sgn(rows[r][j]) != 0) rows[r][j] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  if (pivots) *pivots = std::move(piv);
  return rows;
}

std::size_t rank(const std::vector<QVec>& rows, std::size_t ncols) {
  return rref(rows, ncols).size();
}

std::vector<QVec> nullspace(const std::vector<QVec>& rows, std::size_t ncols) {
  std::vector<std::size_t> piv;
  auto r = rref(rows, ncols, &piv);
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t c : piv) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(ncols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < r.size(); ++i) v[piv[i]] = -r[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(const std::vector<QVec>& a, const QVec& b, std::size_t ncols) {
  std::vector<QVec> aug;
  aug.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    QVec row = a[i];
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  std::vector<std::size_t> piv;
  auto r = rref(aug, ncols + 1, &piv);
  QVec x(ncols, Rational(0));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (piv[i] == ncols) return std::nullopt;
    x[piv[i]] = r[i][ncols];
  }
  return x;
}

AffineSpace AffineSpace::from_generators(const QVec& base, const std::vector<QVec>& directions) {
  AffineSpace a;
  a.base = base;
  a.basis = rref(directions, base.size());
  return a;
}

bool AffineSpace::in_parallel(const QVec& d) const {
  auto rows = basis;
  rows.push_back(d);
  return rank(rows, ambient()) == basis.size();
}

bool AffineSpace::contains(const QVec& x) const { return in_parallel(sub(x, base)); }

QVec project_onto_span(const std::vector<QVec>& span, const QVec& x) {
  const std::size_t n = x.size();
  auto b = rref(span, n);
  const std::size_t k = b.size();
  if (k == 0) return QVec(n, Rational(0));
  std::vector<QVec> gram(k, QVec(k));
  QVec rhs(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(b[i], b[j]);
    rhs[i] = dot(b[i], x);
  }
  auto c = solve(gram, rhs, k);
  if (!c) throw Error("singular Gram system");
  QVec p(n, Rational(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(b[i][j]) != 0) p[j] += (*c)[i] * b[i][j];
  return p;
}

QVec AffineSpace::project(const QVec& x) const {
  return add(base, project_onto_span(basis, sub(x, base)));
}

std::vector<QVec> AffineSpace::complement() const { return rref(nullspace(basis, ambient()), ambient()); }

}  // namespace spectral
