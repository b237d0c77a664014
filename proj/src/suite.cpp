#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <memory>

#include "spectral/error.hpp"
#include "spectral/json_io.hpp"

namespace spectral {

namespace {

std::shared_ptr<VectorSet> set_from_json(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  auto n = [&] { return j.at("n").get<std::size_t>(); };
  if (kind == "nonpositive_orthant") return nonpositive_orthant(n());
  if (kind == "unit_box") return unit_box(n());
  if (kind == "sum_halfspace") return sum_halfspace(n());
  if (kind == "diagonal_line") return diagonal_line(n());
  if (kind == "sphere") return std::make_shared<Sphere>(n(), j.value("radius", 1.0));
  if (kind == "sparsity") return std::make_shared<SparsitySet>(n(), j.at("k").get<std::size_t>());
  if (kind == "finite") {
    std::vector<Vec> pts;
    for (const auto& p : j.at("points")) pts.push_back(vec_from_json(p));
    if (pts.empty()) throw InputError("finite set needs points");
    return std::make_shared<FiniteSet>(pts, j.value("name", std::string("finite")));
  }
  if (kind == "polyhedral") {
    HPolyhedron h;
    for (const auto& r : j.at("a")) h.a.push_back(qvec_from_json(r));
    h.b = qvec_from_json(j.at("b"));
    if (h.a.empty() || h.a.size() != h.b.size()) throw InputError("polyhedral set needs matching a and b");
    h.n = h.a.front().size();
    return std::make_shared<PolyhedralSet>(h, j.value("name", std::string("polyhedral")),
                                           parse_symmetry_mode(j.value("symmetry_mode", std::string("plain"))));
  }
  throw InputError("unknown set kind '" + kind + "'");
}

struct Context {
  std::string base_dir;
  FunctionSpec function(const json& p) const {
    std::filesystem::path path = p.at("function").get<std::string>();
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    return load_function(path.string());
  }
};

std::size_t stratum_of(const MaxAffineFn& f, const Stratification& s, const json& p, const QVec& x) {
  if (p.contains("stratum")) return p.at("stratum").get<std::size_t>();
  auto k = s.locate(f, x);
  if (!k) throw InputError("point outside the domain");
  return *k;
}

json run_probe(const json& p, const Context& ctx) {
  std::string probe = p.at("probe").get<std::string>();
  std::uint64_t seed = p.value("seed", std::uint64_t{0});
  int trials = p.value("trials", 20);
  ProbeReport r;
  json tol;
  if (probe == "moreau_gradient") {
    auto q = set_from_json(p.at("set"));
    double step = p.value("step", 1e-4);
    r = moreau_gradient_probe(*q, trials, seed, p.value("scale", 2.0), step, 1e-5);
    tol = {{"step", step}, {"gradient", 1e-5}};
  } else if (probe == "projection_derivative") {
    auto q = std::dynamic_pointer_cast<PolyhedralSet>(set_from_json(p.at("set")));
    if (!q) throw InputError("projection_derivative needs a polyhedral set");
    std::vector<QVec> extra;
    if (p.contains("directions"))
      for (const auto& d : p.at("directions")) extra.push_back(qvec_from_json(d));
    r = projection_derivative_check(*q, qvec_from_json(p.at("point")), p.value("samples", 10), seed, extra);
    tol = {{"steps", {1e-2, 1e-3, 1e-4}}, {"defect", 1e-4}};
  } else if (probe == "prox_regularity" || probe == "lifted_prox_regularity") {
    auto q = set_from_json(p.at("set"));
    Vec x = vec_from_json(p.at("point"));
    double radius = p.at("radius").get<double>();
    r = probe == "prox_regularity" ? prox_regularity_probe(*q, x, radius, trials, seed)
                                   : lifted_prox_regularity_probe(*q, x, radius, trials, seed);
    tol = {{"minimizer_slack", kMinimizerSlack}, {"diameter", kMinimizerDiameter}, {"radius", radius}};
  } else if (probe == "identifiability") {
    FunctionSpec fs = ctx.function(p);
    SpectralFn F(fs.f, SpectralKind::eigenvalue);
    QVec x = qvec_from_json(p.at("point")), v = qvec_from_json(p.at("subgradient"));
    std::size_t m = stratum_of(fs.f, F.strata(), p, x);
    auto gen = parse_generator(p.value("generator", std::string("prox_path")));
    r = p.value("lifted", false) ? lifted_identifiability_test(F, m, x, v, gen, trials, seed)
                                 : identifiability_test(fs.f, F.strata(), m, x, v, gen, trials, seed);
    tol = {{"sequence_length", kSequenceLength}, {"min_tail", kMinTail}, {"membership", 1e-7}};
  } else if (probe == "partial_smoothness") {
    FunctionSpec fs = ctx.function(p);
    Stratification s = stratify(fs.f);
    r.name = "partial_smoothness";
    if (p.contains("point")) {
      QVec x = qvec_from_json(p.at("point"));
      r.merge(partial_smoothness_check(fs.f, s, stratum_of(fs.f, s, p, x), x));
    } else {
      for (std::size_t k = 0; k < s.strata.size(); ++k)
        r.merge(partial_smoothness_check(fs.f, s, k, s.strata[k].representative));
    }
    tol = {{"exact", true}, {"prox_regularity_diameter", kMinimizerDiameter}};
  } else if (probe == "local_uniqueness") {
    FunctionSpec fs = ctx.function(p);
    QVec x = qvec_from_json(p.at("point"));
    auto dirs = [&](const char* key) {
      std::vector<QVec> d;
      for (const auto& e : p.at(key)) d.push_back(qvec_from_json(e));
      return AffineSpace::from_generators(x, d);
    };
    int samples = p.value("samples", 100);
    auto v = local_uniqueness_check(fs.f, dirs("m1"), dirs("m2"), x, p.value("radius", 0.1), samples, seed);
    r.name = "local_uniqueness";
    r.threshold = 0;
    r.vacuous = !v.applicable;
    r.record(v.witness.empty() ? to_double(x) : to_double(v.witness), v.applicable && !v.agree ? 1 : 0);
    r.detail = v.applicable ? (v.agree ? "agree" : "disagree") : "precondition failed; vacuous";
    tol = {{"exact", true}};
  } else if (probe == "proximal_identification") {
    FunctionSpec fs = ctx.function(p);
    SpectralFn F(fs.f, SpectralKind::eigenvalue);
    Matrix x0 = matrix_from_json(p.at("matrix"));
    double t = p.at("t").get<double>();
    auto tr = proximal_identification_run(F, x0, t, p.value("max_iter", 50));
    r.name = "proximal_identification";
    r.threshold = static_cast<double>(tr.iterates.size() - 1);
    r.record(tr.iterates.back().lambda, tr.identified_at ? static_cast<double>(*tr.identified_at)
                                                   : std::numeric_limits<double>::infinity());
    r.detail = "limit pattern " + tr.iterates.back().pattern;
    tol = {{"grouping", tr.grouping_tol}, {"fixed_point_step", 1e-12}};
  } else if (probe == "numeric_conjugate") {
    std::string oracle = p.value("oracle", std::string("quartic"));
    r.name = "numeric_conjugate";
    r.threshold = 1e-4;
    for (const auto& yj : p.at("points")) {
      Vec y = vec_from_json(yj);
      double got, want;
      if (oracle == "quartic") {
        got = numeric_conjugate([](const Vec& x) {
          double s = 0.0;
          for (double v : x) s += 0.25 * v * v * v * v;
          return s;
        }, y);
        want = 0.0;
        for (double v : y) want += 0.75 * std::pow(std::abs(v), 4.0 / 3.0);
      } else {
        FunctionSpec fs = ctx.function(p);
        got = numeric_conjugate([&](const Vec& x) { return fs.f.value(x); }, y);
        auto w = conjugate_value(fs.f, exact(y));
        want = w ? w->get_d() : std::numeric_limits<double>::infinity();
      }
      r.record(y, std::abs(got - want));
    }
    tol = {{"value", 1e-4}};
  } else {
    throw InputError("unknown probe '" + probe + "'");
  }
  r.seed = seed;
  json j = to_json(r);
  j["probe"] = probe;
  j["name"] = p.value("name", r.name);
  j["tolerances"] = tol;
  return j;
}

}  // namespace

json run_suite(const json& suite, const std::string& base_dir) {
  if (!suite.is_object()) throw InputError("a suite is a JSON object");
  Context ctx{base_dir};
  json reports = json::array();
  bool pass = true;
  try {
    for (const auto& p : suite.value("probes", json::array())) {
      json rep;
      try {
        rep = run_probe(p, ctx);
      } catch (const AmbiguityError& e) {
        rep = {{"name", p.value("name", p.value("probe", std::string("?")))}, {"probe", p.value("probe", "?")},
               {"pass", false}, {"detail", std::string("ambiguous: ") + e.what()}};
      } catch (const InconclusiveError& e) {
        rep = {{"name", p.value("name", p.value("probe", std::string("?")))}, {"probe", p.value("probe", "?")},
               {"pass", false}, {"detail", std::string("inconclusive: ") + e.what()}};
      }
      pass = pass && rep.at("pass").get<bool>();
      reports.push_back(std::move(rep));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed suite: ") + e.what());
  }
  std::stable_sort(reports.begin(), reports.end(), [](const json& a, const json& b) {
    return a.at("name").get<std::string>() < b.at("name").get<std::string>();
  });
  return {{"suite", suite.value("name", std::string())}, {"pass", pass}, {"reports", reports}};
}

}  // namespace spectral
