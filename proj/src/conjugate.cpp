#include "spectral/error.hpp"
#include "spectral/exact/lp.hpp"
#include "spectral/polyfun.hpp"

namespace spectral {

RelOpen dual_map(const MaxAffineFn& f, const Stratification& s, std::size_t i) {
  return RelOpen{subdiff(f, s.strata.at(i).representative), true};
}

ExtRational conjugate_value(const MaxAffineFn& f, const QVec& y) {
  // max <x, y> - r  s.t.  <a_i, x> - r <= -b_i,  <c_j, x> <= d_j
  const std::size_t n = f.dim();
  if (y.size() != n) throw InputError("point has wrong dimension");
  LinearProgram lp(n + 1);
  for (const auto& p : f.pieces()) {
    QVec row = p.a;
    row.push_back(Rational(-1));
    lp.add(std::move(row), Sense::le, Rational(-p.b));
  }
  for (const auto& c : f.constraints()) {
    QVec row = c.c;
    row.push_back(Rational(0));
    lp.add(std::move(row), Sense::le, c.d);
  }
  lp.objective = y;
  lp.objective.push_back(Rational(-1));
  auto res = solve_lp(lp);
  if (res.status == LpStatus::unbounded) return std::nullopt;
  if (res.status == LpStatus::infeasible) throw Error("empty epigraph");
  return res.value;
}

GenPolyhedron conjugate_subdiff(const MaxAffineFn& f, const QVec& y) {
  const std::size_t n = f.dim();
  const EpiVRep& e = f.epigraph();
  auto score = [&](const QVec& z) {
    Rational s = -z[n];
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(y[k]) != 0) s += y[k] * z[k];
    return s;
  };
  std::vector<QVec> rays;
  for (const auto& r : e.rays) {
    int sg = sgn(score(r));
    if (sg > 0) return GenPolyhedron(n);  // f*(y) = +inf
    if (sg == 0) {
      QVec d(r.begin(), r.end() - 1);
      if (!is_zero(d)) rays.push_back(std::move(d));
    }
  }
  Rational best = score(e.points.at(0));
  for (const auto& p : e.points) {
    Rational v = score(p);
    if (v > best) best = v;
  }
  std::vector<QVec> pts;
  for (const auto& p : e.points)
    if (score(p) == best) pts.emplace_back(p.begin(), p.end() - 1);
  return GenPolyhedron(n, std::move(pts), std::move(rays)).canonical();
}

ConjugateStratification conjugate_stratification(const MaxAffineFn& f, const Stratification& s) {
  ConjugateStratification c;
  c.certified = true;
  for (std::size_t i = 0; i < s.strata.size(); ++i) {
    RelOpen d = dual_map(f, s, i);
    QVec y = d.closure.ri_point();
    c.dims.push_back(d.dim());
    c.representatives.push_back(y);
    // J_{f*}(J_f(M)): ri of dF*(y) at an ri point of the dual stratum must
    // give back M, with closure cl M
    GenPolyhedron back = conjugate_subdiff(f, y);
    bool ok = !back.empty() && back == s.strata[i].closure &&
              back.ri_contains(s.strata[i].representative) && back.dim() == s.strata[i].dim;
    if (!ok) c.certified = false;
    c.inverse.push_back(ok ? i : s.strata.size());
    c.strata.push_back(std::move(d));
  }
  return c;
}

FenchelYoungResult fenchel_young_check(const MaxAffineFn& f, const QVec& x, const QVec& y) {
  FenchelYoungResult r;
  r.fx = f.value(x);
  r.fstar = conjugate_value(f, y);
  r.pairing = dot(x, y);
  if (!r.fx || !r.fstar) {
    r.inequality = true;
    r.equality = false;
    r.subgradient = false;
  } else {
    Rational rhs = *r.fx + *r.fstar;
    r.inequality = r.pairing <= rhs;
    r.equality = r.pairing == rhs;
    r.subgradient = subdiff(f, x).contains(y);
  }
  r.pass = r.inequality && (r.equality == r.subgradient);
  return r;
}

BiconjugateResult biconjugate_check(const MaxAffineFn& f, const QVec& x) {
  const std::size_t n = f.dim();
  if (x.size() != n) throw InputError("point has wrong dimension");
  const auto& pieces = f.pieces();
  const auto& cons = f.constraints();
  const std::size_t np = pieces.size(), nc = cons.size();
  BiconjugateResult r;
  r.value = f.value(x);

  LinearProgram lp(np + nc);
  for (std::size_t j = 0; j < np + nc; ++j) lp.set_nonneg(j);
  QVec simplex(np + nc, Rational(0));
  for (std::size_t i = 0; i < np; ++i) simplex[i] = 1;
  lp.add(simplex, Sense::eq, Rational(1));
  lp.objective.resize(np + nc);
  for (std::size_t i = 0; i < np; ++i) lp.objective[i] = dot(pieces[i].a, x) + pieces[i].b;
  for (std::size_t j = 0; j < nc; ++j) lp.objective[np + j] = dot(cons[j].c, x) - cons[j].d;
  auto res = solve_lp(lp);
  if (res.status == LpStatus::unbounded) {
    r.biconjugate = std::nullopt;
    r.strong_duality = true;
  } else {
    r.biconjugate = res.value;
    r.y_star.assign(n, Rational(0));
    for (std::size_t i = 0; i < np; ++i)
      if (sgn(res.x[i]) != 0) r.y_star = add(r.y_star, scale(res.x[i], pieces[i].a));
    for (std::size_t j = 0; j < nc; ++j)
      if (sgn(res.x[np + j]) != 0) r.y_star = add(r.y_star, scale(res.x[np + j], cons[j].c));
    auto fs = conjugate_value(f, r.y_star);
    r.strong_duality = fs.has_value() && dot(x, r.y_star) - *fs == res.value;
  }
  r.pass = r.strong_duality && r.value.has_value() == r.biconjugate.has_value() &&
           (!r.value || *r.value == *r.biconjugate);
  return r;
}

}  // namespace spectral
