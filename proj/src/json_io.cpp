#include "spectral/json_io.hpp"

#include <fstream>
#include <sstream>

#include "spectral/error.hpp"

namespace spectral {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

json read_json_arg(const std::string& arg) {
  std::size_t k = arg.find_first_not_of(" \t\n");
  if (k != std::string::npos && (arg[k] == '[' || arg[k] == '{')) {
    try {
      return json::parse(arg);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("malformed inline JSON: ") + e.what());
    }
  }
  return read_json_file(arg);
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  // a float literal is read back through its shortest decimal form
  if (j.is_number()) return parse_rational(j.dump());
  throw InputError("expected a rational, got " + j.dump());
}

QVec qvec_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
  QVec v;
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw InputError("expected an array, got " + j.dump());
  Vec v;
  for (const auto& e : j) {
    if (e.is_number()) v.push_back(e.get<double>());
    else if (e.is_string()) v.push_back(parse_rational(e.get<std::string>()).get_d());
    else throw InputError("expected a number, got " + e.dump());
  }
  return v;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("a matrix is a nonempty array of rows");
  std::size_t rows = j.size(), cols = 0;
  std::vector<Vec> data;
  for (const auto& r : j) {
    data.push_back(vec_from_json(r));
    if (data.size() == 1) cols = data.back().size();
    if (data.back().size() != cols || cols == 0) throw InputError("matrix rows have unequal lengths");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = data[i][k];
  if (!m.all_finite()) throw InputError("matrix has non-finite entries");
  return m;
}

FunctionSpec function_from_json(const json& j) {
  try {
    std::size_t n = j.at("dimension").get<std::size_t>();
    std::vector<AffinePiece> pieces;
    for (const auto& p : j.at("pieces")) {
      AffinePiece a{qvec_from_json(p.at("a")), p.contains("b") ? rational_from_json(p.at("b")) : Rational(0)};
      if (a.a.size() != n) throw InputError("piece has the wrong length");
      pieces.push_back(std::move(a));
    }
    std::vector<DomainConstraint> cons;
    if (j.contains("constraints")) {
      for (const auto& c : j.at("constraints")) {
        DomainConstraint d{qvec_from_json(c.at("c")), c.contains("d") ? rational_from_json(c.at("d")) : Rational(0)};
        if (d.c.size() != n) throw InputError("constraint has the wrong length");
        cons.push_back(std::move(d));
      }
    }
    SymmetryMode mode = parse_symmetry_mode(j.value("symmetry_mode", std::string("plain")));
    std::string kind = j.value("kind", std::string("eigenvalue"));
    if (kind != "eigenvalue" && kind != "singular") throw InputError("kind must be eigenvalue or singular");
    FunctionSpec spec{MaxAffineFn::make(n, std::move(pieces), std::move(cons), mode, j.value("name", std::string())),
                      kind == "singular" ? SpectralKind::singular : SpectralKind::eigenvalue};
    return spec;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed function file: ") + e.what());
  }
}

FunctionSpec load_function(const std::string& path) { return function_from_json(read_json_file(path)); }

json to_json(const QVec& v) {
  json j = json::array();
  for (const auto& q : v) j.push_back(q.get_str());
  return j;
}

json to_json(const Vec& v) {
  json j = json::array();
  for (double x : v) j.push_back(x);
  return j;
}

json to_json(const Matrix& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(to_json(Vec(m.row(i).begin(), m.row(i).end())));
  return j;
}

json to_json(const MaxAffineFn& f, SpectralKind kind) {
  json pieces = json::array(), cons = json::array();
  for (const auto& p : f.pieces()) pieces.push_back({{"a", to_json(p.a)}, {"b", p.b.get_str()}});
  for (const auto& c : f.constraints()) cons.push_back({{"c", to_json(c.c)}, {"d", c.d.get_str()}});
  return {{"name", f.name()},
          {"dimension", f.dim()},
          {"pieces", pieces},
          {"constraints", cons},
          {"symmetry_mode", to_string(f.mode())},
          {"kind", kind == SpectralKind::singular ? "singular" : "eigenvalue"}};
}

json to_json(const Partition& p) {
  json j = json::array();
  for (const auto& b : p.blocks) {
    json block = json::array();
    for (std::size_t i : b) block.push_back(i + 1);
    j.push_back(block);
  }
  return j;
}

json to_json(const Permutation& p) {
  json image = json::array();
  for (std::size_t i : p.image) image.push_back(i + 1);
  json j = {{"image", image}};
  if (p.is_signed()) j["signs"] = p.signs;
  return j;
}

json to_json(const GenPolyhedron& p) {
  json pts = json::array(), rays = json::array();
  for (const auto& v : p.points()) pts.push_back(to_json(v));
  for (const auto& v : p.rays()) rays.push_back(to_json(v));
  return {{"points", pts}, {"rays", rays}};
}

json to_json(const ProbeReport& r) {
  return {{"name", r.name},         {"pass", r.pass},
          {"vacuous", r.vacuous},   {"measured", std::isfinite(r.measured) ? json(r.measured) : json("inf")},
          {"threshold", r.threshold}, {"trials", r.trials},
          {"seed", r.seed},         {"worst_input", to_json(r.worst_input)},
          {"detail", r.detail}};
}

json to_json(const IdentificationTrace& t) {
  json its = json::array();
  for (std::size_t k = 0; k < t.iterates.size(); ++k) {
    const auto& e = t.iterates[k];
    its.push_back({{"k", k},
                   {"X", to_json(e.x)},
                   {"lambda", to_json(e.lambda)},
                   {"pattern", e.pattern},
                   {"value", std::isfinite(e.value) ? json(e.value) : json("inf")}});
  }
  return {{"iterates", its},
          {"identified_at", t.identified_at ? json(*t.identified_at) : json(nullptr)},
          {"fixed_point", t.fixed_point},
          {"t", t.t},
          {"tolerances", {{"grouping", t.grouping_tol}, {"fixed_point_step", 1e-12}}}};
}

namespace {

json lifted_to_json(const LiftedStratum& l) {
  return {{"member", l.member}, {"base_dim", l.base_dim}, {"pattern", to_json(l.pattern)},
          {"dim_lifted", l.dim_lifted}};
}

}  // namespace

json stratification_report(const SpectralFn& F) {
  const MaxAffineFn& f = F.base();
  const Stratification& s = F.strata();
  json strata = json::array();
  for (std::size_t i = 0; i < s.strata.size(); ++i) {
    const Stratum& m = s.strata[i];
    json pieces = json::array(), cons = json::array();
    for (std::size_t k : m.pieces) pieces.push_back(k);
    for (std::size_t k : m.constraints) cons.push_back(k);
    strata.push_back({{"index", i},
                      {"dim", m.dim},
                      {"pieces", pieces},
                      {"constraints", cons},
                      {"representative", to_json(m.representative)},
                      {"orbit", m.orbit},
                      {"from_root", to_json(m.from_root)}});
  }
  json order = json::array();
  for (const auto& [i, j] : s.closure_order) order.push_back({i, j});
  json orbits = json::array();
  for (const auto& o : s.orbits) orbits.push_back(o);

  ConjugateStratification cs = conjugate_stratification(f, s);
  json dual = json::array(), pairing = json::array();
  for (std::size_t i = 0; i < cs.strata.size(); ++i) {
    dual.push_back({{"index", i},
                    {"dim", cs.dims[i]},
                    {"representative", to_json(cs.representatives[i])},
                    {"closure", to_json(cs.strata[i].closure)}});
    pairing.push_back({{"primal", i}, {"dual", i}, {"back", cs.inverse[i]},
                       {"primal_dim", s.strata[i].dim}, {"dual_dim", cs.dims[i]}});
  }
  json out = {{"function", to_json(f, F.kind())},
              {"strata", strata},
              {"closure_order", order},
              {"orbits", orbits},
              {"dual_strata", dual},
              {"pairing", pairing},
              {"bijection_certified", cs.certified}};
  if (F.kind() == SpectralKind::eigenvalue) {
    LiftedStratification ls = lift_stratification(F);
    json lifted = json::array();
    for (std::size_t o = 0; o < ls.pairs.size(); ++o)
      lifted.push_back({{"orbit", o}, {"primal", lifted_to_json(ls.pairs[o].primal)},
                        {"dual", lifted_to_json(ls.pairs[o].dual)}});
    out["lifted"] = lifted;
  } else {
    out["lifted"] = nullptr;
  }
  return out;
}

}  // namespace spectral
