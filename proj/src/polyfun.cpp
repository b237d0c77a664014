#include "spectral/polyfun.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "spectral/error.hpp"
#include "spectral/exact/lp.hpp"

namespace spectral {

std::string to_string(const ExtRational& v) { return v ? v->get_str() : "+inf"; }

std::string to_string(SymmetryMode m) {
  switch (m) {
    case SymmetryMode::plain: return "plain";
    case SymmetryMode::permutation: return "permutation";
    case SymmetryMode::signed_perm: return "signed";
  }
  return "plain";
}

SymmetryMode parse_symmetry_mode(const std::string& s) {
  if (s == "plain") return SymmetryMode::plain;
  if (s == "permutation") return SymmetryMode::permutation;
  if (s == "signed") return SymmetryMode::signed_perm;
  throw InputError("unknown symmetry_mode '" + s + "'");
}

namespace {

// Orbit closure of `items` under `gens`, keeping first-seen order.
template <class T, class Act>
std::vector<T> close_under(std::vector<T> items, const std::vector<Permutation>& gens, Act act) {
  std::set<T> seen;
  std::vector<T> out;
  for (auto& it : items)
    if (seen.insert(it).second) out.push_back(it);
  for (std::size_t k = 0; k < out.size(); ++k) {
    for (const auto& g : gens) {
      T img = act(g, out[k]);
      if (seen.insert(img).second) out.push_back(std::move(img));
    }
  }
  return out;
}

}  // namespace

MaxAffineFn MaxAffineFn::make(std::size_t n, std::vector<AffinePiece> pieces,
                              std::vector<DomainConstraint> constraints, SymmetryMode mode,
                              std::string name) {
  if (n == 0) throw InputError("function dimension must be positive");
  if (pieces.empty()) throw InputError("a max-affine function needs at least one piece");
  for (const auto& p : pieces)
    if (p.a.size() != n) throw InputError("piece has wrong dimension");
  for (const auto& c : constraints) {
    if (c.c.size() != n) throw InputError("constraint has wrong dimension");
    if (is_zero(c.c)) {
      if (sgn(c.d) < 0) throw InputError("empty domain: constraint 0 <= negative");
    }
  }
  constraints.erase(std::remove_if(constraints.begin(), constraints.end(),
                                   [](const DomainConstraint& c) { return is_zero(c.c); }),
                    constraints.end());
  MaxAffineFn f;
  f.n_ = n;
  f.mode_ = mode;
  f.name_ = std::move(name);
  auto gens = group_generators(n, mode == SymmetryMode::signed_perm);
  if (mode == SymmetryMode::plain) gens.clear();
  f.pieces_ = close_under(std::move(pieces), gens, [](const Permutation& g, const AffinePiece& p) {
    return AffinePiece{g.apply(p.a), p.b};
  });
  f.constraints_ = close_under(std::move(constraints), gens,
                               [](const Permutation& g, const DomainConstraint& c) {
                                 return DomainConstraint{g.apply(c.c), c.d};
                               });
  // nonempty domain
  LinearProgram lp(n);
  for (const auto& c : f.constraints_) lp.add(c.c, Sense::le, c.d);
  if (solve_lp(lp).status == LpStatus::infeasible) throw InputError("function has an empty domain");
  return f;
}

bool MaxAffineFn::in_domain(const QVec& x) const {
  if (x.size() != n_) throw InputError("point has wrong dimension");
  for (const auto& c : constraints_)
    if (dot(c.c, x) > c.d) return false;
  return true;
}

ExtRational MaxAffineFn::value(const QVec& x) const {
  if (!in_domain(x)) return std::nullopt;
  Rational best = dot(pieces_[0].a, x) + pieces_[0].b;
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    Rational v = dot(pieces_[i].a, x) + pieces_[i].b;
    if (v > best) best = v;
  }
  return best;
}

double MaxAffineFn::value(const Vec& x) const {
  if (x.size() != n_) throw InputError("point has wrong dimension");
  auto eval = [&](const QVec& a, const Rational& b) {
    double s = b.get_d();
    for (std::size_t k = 0; k < n_; ++k)
      if (sgn(a[k]) != 0) s += a[k].get_d() * x[k];
    return s;
  };
  for (const auto& c : constraints_) {
    // tolerate rounding in the constraint test
    double lhs = eval(c.c, Rational(0));
    if (lhs > c.d.get_d() + 1e-12 * (1.0 + std::abs(c.d.get_d()))) return std::numeric_limits<double>::infinity();
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) best = std::max(best, eval(p.a, p.b));
  return best;
}

std::vector<std::size_t> MaxAffineFn::active_pieces(const QVec& x) const {
  auto v = value(x);
  if (!v) throw InputError("point outside the domain");
  std::vector<std::size_t> act;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (dot(pieces_[i].a, x) + pieces_[i].b == *v) act.push_back(i);
  return act;
}

std::vector<std::size_t> MaxAffineFn::active_constraints(const QVec& x) const {
  std::vector<std::size_t> act;
  for (std::size_t j = 0; j < constraints_.size(); ++j)
    if (dot(constraints_[j].c, x) == constraints_[j].d) act.push_back(j);
  return act;
}

Bitset MaxAffineFn::tight_rows(const QVec& x) const {
  Bitset t(rows());
  for (std::size_t i : active_pieces(x)) t.set(i);
  for (std::size_t j : active_constraints(x)) t.set(pieces_.size() + j);
  return t;
}

HPolyhedron MaxAffineFn::domain() const {
  HPolyhedron h;
  h.n = n_;
  for (const auto& c : constraints_) {
    h.a.push_back(c.c);
    h.b.push_back(c.d);
  }
  return h;
}

std::vector<Permutation> MaxAffineFn::symmetry_generators() const {
  if (mode_ == SymmetryMode::plain) return {};
  return group_generators(n_, mode_ == SymmetryMode::signed_perm);
}

HPolyhedron MaxAffineFn::epigraph_inequalities() const {
  HPolyhedron h;
  h.n = n_ + 1;
  for (const auto& p : pieces_) {
    QVec row = p.a;
    row.push_back(Rational(-1));
    h.a.push_back(std::move(row));
    h.b.push_back(-p.b);
  }
  for (const auto& c : constraints_) {
    QVec row = c.c;
    row.push_back(Rational(0));
    h.a.push_back(std::move(row));
    h.b.push_back(c.d);
  }
  return h;
}

const EpiVRep& MaxAffineFn::epigraph() const {
  std::call_once(cache_->once, [this] { cache_->epi = incidence_vrep(epigraph_inequalities()); });
  return cache_->epi;
}

GenPolyhedron subdiff(const MaxAffineFn& f, const QVec& x) {
  if (!f.in_domain(x)) throw InputError("subdiff: point outside the domain");
  std::vector<QVec> pts, rays;
  for (std::size_t i : f.active_pieces(x)) pts.push_back(f.pieces()[i].a);
  for (std::size_t j : f.active_constraints(x)) rays.push_back(f.constraints()[j].c);
  return GenPolyhedron(f.dim(), std::move(pts), std::move(rays)).canonical();
}

}  // namespace spectral
