#include "spectral/exact/cone.hpp"

#include <bit>
#include <cstdlib>

#include "spectral/error.hpp"
#include "spectral/exact/linalg.hpp"

namespace spectral {

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::subset_of(const Bitset& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

Bitset Bitset::operator&(const Bitset& o) const {
  Bitset r(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
  return r;
}

namespace {

long ray_budget() {
  if (const char* env = std::getenv("SPECTRAL_DD_RAY_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return 100000L;
}

struct Ray {
  QVec v;
  Bitset zero;  // processed constraints tight at v
};

}  // namespace

ConeGenerators cone_generators(const std::vector<QVec>& rows, std::size_t d) {
  const std::size_t m = rows.size();
  std::vector<QVec> lin;
  for (std::size_t i = 0; i < d; ++i) {
    QVec e(d, Rational(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (std::size_t k = 0; k < m; ++k) {
    const QVec& a = rows[k];
    if (a.size() != d) throw InputError("cone row has wrong length");
    if (is_zero(a)) continue;

    // a lineality direction not orthogonal to a becomes a ray
    std::size_t l0 = lin.size();
    Rational al0;
    for (std::size_t i = 0; i < lin.size(); ++i) {
      Rational v = dot(a, lin[i]);
      if (sgn(v) != 0) {
        l0 = i;
        al0 = v;
        break;
      }
    }
    if (l0 < lin.size()) {
      QVec dir = lin[l0];
      if (sgn(al0) > 0) {
        dir = scale(Rational(-1), dir);
        al0 = -al0;
      }
      std::vector<QVec> rest;
      for (std::size_t i = 0; i < lin.size(); ++i) {
        if (i == l0) continue;
        Rational v = dot(a, lin[i]);
        rest.push_back(sgn(v) == 0 ? lin[i] : sub(lin[i], scale(v / al0, dir)));
      }
      lin = std::move(rest);
      for (auto& r : rays) {
        Rational v = dot(a, r.v);
        if (sgn(v) != 0) r.v = sub(r.v, scale(v / al0, dir));
        r.zero.set(k);
      }
      Ray nr{primitive(dir), Bitset(m)};
      for (std::size_t j = 0; j < k; ++j)
        if (sgn(dot(rows[j], nr.v)) == 0) nr.zero.set(j);
      rays.push_back(std::move(nr));
      continue;
    }

    std::vector<Rational> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      int s = sgn(val[i]);
      if (s > 0) {
        pos.push_back(i);
      } else {
        if (s < 0) neg.push_back(i);
      }
    }
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        Bitset common = rays[p].zero & rays[q].zero;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        QVec v = sub(scale(val[p], rays[q].v), scale(val[q], rays[p].v));
        Ray nr{primitive(v), common};
        nr.zero.set(k);
        next.push_back(std::move(nr));
        if (static_cast<long>(next.size() + rays.size()) > ray_budget())
          throw BudgetExceeded("double description ray budget exceeded");
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      int s = sgn(val[i]);
      if (s > 0) continue;
      Ray r = std::move(rays[i]);
      if (s == 0) r.zero.set(k);
      next.push_back(std::move(r));
    }
    rays = std::move(next);
  }

  ConeGenerators g;
  g.lineality = rref(lin, d);
  for (auto& r : rays) g.rays.push_back(std::move(r.v));
  return g;
}

PolyhedronGenerators polyhedron_generators(const std::vector<QVec>& a, const QVec& b, std::size_t d) {
  std::vector<QVec> rows;
  for (std::size_t i = 0; i < a.size(); ++i) {
    QVec r = a[i];
    r.push_back(-b[i]);
    rows.push_back(std::move(r));
  }
  QVec t(d + 1, Rational(0));
  t[d] = -1;
  rows.push_back(t);
  auto cone = cone_generators(rows, d + 1);
  PolyhedronGenerators out;
  for (auto& l : cone.lineality) {
    l.pop_back();  // last coordinate is zero on the lineality space
    out.lineality.push_back(std::move(l));
  }
  for (auto& r : cone.rays) {
    Rational tv = r[d];
    r.pop_back();
    if (sgn(tv) > 0) {
      out.points.push_back(scale(Rational(1) / tv, r));
    } else {
      out.rays.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace spectral
