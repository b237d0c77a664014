#include <algorithm>

#include "spectral/error.hpp"
#include "spectral/polyfun.hpp"

namespace spectral {

namespace {

QVec drop_last(const QVec& z) { return QVec(z.begin(), z.end() - 1); }

// Whether conv(points) + cone(rays) of stratum i lies in cl M_j, using the
// inequality description of cl M_j.
bool closure_inside(const MaxAffineFn& f, const Stratum& mi, const Stratum& mj) {
  const auto& pieces = f.pieces();
  const auto& cons = f.constraints();
  const std::size_t i0 = mj.pieces.front();
  auto point_ok = [&](const QVec& x) {
    if (!f.in_domain(x)) return false;
    Rational top = dot(pieces[i0].a, x) + pieces[i0].b;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      Rational v = dot(pieces[k].a, x) + pieces[k].b;
      bool in_i = std::binary_search(mj.pieces.begin(), mj.pieces.end(), k);
      if (in_i ? v != top : v > top) return false;
    }
    for (std::size_t j : mj.constraints)
      if (dot(cons[j].c, x) != cons[j].d) return false;
    return true;
  };
  auto ray_ok = [&](const QVec& d) {
    Rational top = dot(pieces[i0].a, d);
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      Rational v = dot(pieces[k].a, d);
      bool in_i = std::binary_search(mj.pieces.begin(), mj.pieces.end(), k);
      if (in_i ? v != top : v > top) return false;
    }
    for (std::size_t j = 0; j < cons.size(); ++j) {
      Rational v = dot(cons[j].c, d);
      bool in_j = std::binary_search(mj.constraints.begin(), mj.constraints.end(), j);
      if (in_j ? sgn(v) != 0 : sgn(v) > 0) return false;
    }
    return true;
  };
  for (const auto& p : mi.closure.points())
    if (!point_ok(p)) return false;
  for (const auto& r : mi.closure.rays())
    if (!ray_ok(r)) return false;
  return true;
}

}  // namespace

std::optional<std::size_t> Stratification::find(const Bitset& tight) const {
  auto it = index_.find(tight);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Stratification::locate(const MaxAffineFn& f, const QVec& x) const {
  if (!f.in_domain(x)) return std::nullopt;
  return find(f.tight_rows(x));
}

bool Stratification::in_closure(const MaxAffineFn& f, std::size_t j, const QVec& x) const {
  if (!f.in_domain(x)) return false;
  return strata[j].tight.subset_of(f.tight_rows(x));
}

Stratification stratify(const MaxAffineFn& f) {
  const EpiVRep& e = f.epigraph();
  if (e.points.empty()) throw InputError("function has an empty domain");
  const std::size_t np = f.pieces().size();
  const std::size_t nrows = f.rows();
  const std::size_t n = f.dim();
  auto faces = enumerate_faces(e, nrows);

  Stratification s;
  s.n = n;
  for (const auto& face : faces) {
    bool lower = false;
    for (std::size_t i = 0; i < np && !lower; ++i) lower = face.tight.test(i);
    if (!lower) continue;
    Stratum m;
    m.tight = face.tight;
    for (std::size_t k = 0; k < nrows; ++k) {
      if (!face.tight.test(k)) continue;
      if (k < np) {
        m.pieces.push_back(k);
      } else {
        m.constraints.push_back(k - np);
      }
    }
    std::vector<QVec> pts, rays;
    for (std::size_t p : face.points) pts.push_back(drop_last(e.points[p]));
    for (std::size_t r : face.rays) {
      QVec d = drop_last(e.rays[r]);
      if (!is_zero(d)) rays.push_back(std::move(d));
    }
    GenPolyhedron raw(n, std::move(pts), std::move(rays));
    m.representative = raw.ri_point();
    m.closure = raw.canonical();
    m.hull = m.closure.affine_hull();
    m.dim = m.hull.dim();
    s.strata.push_back(std::move(m));
  }
  std::sort(s.strata.begin(), s.strata.end(), [](const Stratum& a, const Stratum& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.pieces != b.pieces) return a.pieces < b.pieces;
    return a.constraints < b.constraints;
  });
  for (std::size_t i = 0; i < s.strata.size(); ++i) s.index_[s.strata[i].tight] = i;

  for (std::size_t i = 0; i < s.strata.size(); ++i) {
    if (f.tight_rows(s.strata[i].representative) != s.strata[i].tight)
      throw Error("stratum representative is not in its stratum");
    for (std::size_t j = 0; j < s.strata.size(); ++j)
      if (i != j && s.strata[j].tight.subset_of(s.strata[i].tight)) s.closure_order.emplace_back(i, j);
  }
  if (!verify_frontier(f, s)) throw Error("frontier condition failed");

  // symmetry orbits by breadth-first search over the group generators
  auto gens = f.symmetry_generators();
  std::vector<bool> done(s.strata.size(), false);
  for (std::size_t root = 0; root < s.strata.size(); ++root) {
    if (done[root]) continue;
    std::vector<std::size_t> orbit{root};
    done[root] = true;
    s.strata[root].from_root = Permutation::identity(n);
    s.strata[root].orbit = s.orbits.size();
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      std::size_t cur = orbit[k];
      for (const auto& g : gens) {
        QVec img = g.apply(s.strata[cur].representative);
        auto t = s.locate(f, img);
        if (!t) throw Error("symmetry maps a stratum outside the domain");
        if (s.strata[*t].dim != s.strata[cur].dim) throw Error("symmetry changes stratum dimension");
        if (done[*t]) continue;
        done[*t] = true;
        s.strata[*t].from_root = g.compose(s.strata[cur].from_root);
        s.strata[*t].orbit = s.orbits.size();
        orbit.push_back(*t);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    s.orbits.push_back(std::move(orbit));
  }
  return s;
}

bool verify_frontier(const MaxAffineFn& f, const Stratification& s) {
  // M_i meets cl M_j exactly when the tight rows of M_j are tight on M_i;
  // then every generator of cl M_i must satisfy the description of cl M_j.
  for (std::size_t i = 0; i < s.strata.size(); ++i) {
    const Bitset rep_tight = f.tight_rows(s.strata[i].representative);
    for (std::size_t j = 0; j < s.strata.size(); ++j) {
      bool meets = s.strata[j].tight.subset_of(rep_tight);
      if (meets && !closure_inside(f, s.strata[i], s.strata[j])) return false;
    }
  }
  return true;
}

}  // namespace spectral
