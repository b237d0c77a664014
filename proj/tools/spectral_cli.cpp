// Command-line front end: eig, svd, value, stratify, prox-path, verify.
// Exit codes: 0 pass, 1 verification failure, 2 input error, 3 budget.

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "spectral/error.hpp"
#include "spectral/exact/lp.hpp"
#include "spectral/json_io.hpp"

using namespace spectral;

namespace {

struct Common {
  std::string out;
  double grouping_tol = -1;
  std::uint64_t seed = 0;
  bool no_timestamp = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--out", c.out, "Write JSON here instead of stdout");
  cmd->add_option("--tol.grouping", c.grouping_tol, "Eigenvalue grouping tolerance (default 1e-8(1+|X|_F))");
  cmd->add_option("--seed", c.seed, "Seed for stochastic steps");
  cmd->add_flag("--no-timestamp", c.no_timestamp, "Omit the timestamp field");
}

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void emit(json j, const Common& c) {
  if (!c.no_timestamp) j["timestamp"] = utc_now();
  std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw InputError("cannot write '" + c.out + "'");
  f << text;
}

double tol_for(const Common& c, const Matrix& x) { return c.grouping_tol < 0 ? default_grouping_tol(x) : c.grouping_tol; }

json cmd_eig(const std::string& arg, const Common& c) {
  Matrix x = symmetrize(matrix_from_json(read_json_arg(arg)));
  EigenPair e = eig_sym(x);
  double tol = tol_for(c, x);
  return {{"command", "eig"},
          {"lambda", to_json(e.lambda)},
          {"U", to_json(e.U)},
          {"residual", (x - reconstruct(e)).frobenius_norm()},
          {"orthogonality", orthogonality_defect(e.U)},
          {"partition", to_json(partition_of(e.lambda, tol))},
          {"tolerances", {{"grouping", tol}, {"off_diagonal_stop", 1e-14}}}};
}

json cmd_svd(const std::string& arg, const Common& c) {
  Matrix a = matrix_from_json(read_json_arg(arg));
  bool wide = a.rows() < a.cols();
  SVDTriple s = svd(wide ? a.transpose() : a);
  Matrix back = reconstruct(s);
  if (wide) back = back.transpose();
  double tol = tol_for(c, a);
  return {{"command", "svd"},
          {"sigma", to_json(s.sigma)},
          {"U", to_json(wide ? s.V : s.U)},
          {"V", to_json(wide ? s.U : s.V)},
          {"transposed", wide},
          {"residual", (a - back).frobenius_norm()},
          {"tolerances", {{"grouping", tol}, {"rank_cutoff", 1e-13}}}};
}

json cmd_value(const std::string& fn, const std::string& matrix, const std::string& vector, const Common& c) {
  FunctionSpec fs = load_function(fn);
  json out = {{"command", "value"}, {"function", fs.f.name()}};
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json("inf"); };
  if (!vector.empty()) {
    QVec x = qvec_from_json(read_json_arg(vector));
    if (x.size() != fs.f.dim()) throw InputError("vector length does not match the function dimension");
    auto v = fs.f.value(x);
    out["vector_value"] = v ? json(v->get_str()) : json("inf");
    out["subdifferential"] = fs.f.in_domain(x) ? to_json(subdiff(fs.f, x)) : json(nullptr);
  }
  if (!matrix.empty()) {
    Matrix x = matrix_from_json(read_json_arg(matrix));
    SpectralFn F(fs.f, fs.kind);
    double tol = tol_for(c, x);
    out["matrix_value"] = num(fs.kind == SpectralKind::singular
                                  ? sing_value(F, x.rows() < x.cols() ? x.transpose() : x, tol)
                                  : spectral_value(F, x, tol));
    out["tolerances"] = {{"grouping", tol}, {"snap_max_denominator", 1000000}};
  }
  return out;
}

json cmd_stratify(const std::string& fn) {
  FunctionSpec fs = load_function(fn);
  json out = stratification_report(SpectralFn(fs.f, fs.kind));
  out["command"] = "stratify";
  out["tolerances"] = {{"exact", true}, {"lp_pivot_budget", lp_pivot_budget()}};
  return out;
}

json cmd_prox_path(const std::string& fn, const std::string& matrix, double t, int max_iter, const Common& c) {
  FunctionSpec fs = load_function(fn);
  if (fs.kind != SpectralKind::eigenvalue) throw InputError("prox-path needs an eigenvalue function");
  Matrix x0 = matrix_from_json(read_json_arg(matrix));
  IdentificationTrace tr = proximal_identification_run(SpectralFn(fs.f, fs.kind), x0, t, max_iter, c.grouping_tol);
  json out = to_json(tr);
  json ks = json::array(), pats = json::array(), vals = json::array();
  for (std::size_t k = 0; k < tr.iterates.size(); ++k) {
    ks.push_back(k);
    pats.push_back(tr.iterates[k].pattern);
    vals.push_back(tr.iterates[k].value);
  }
  out["columns"] = {{"k", ks}, {"pattern", pats}, {"value", vals}};
  out["command"] = "prox-path";
  out["max_iter"] = max_iter;
  out["seed"] = c.seed;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral lifts of polyhedral functions"};
  app.require_subcommand(1);
  Common common;
  std::string matrix, vector, function, suite;
  double t = 0.5;
  int max_iter = 50;

  auto* eig = app.add_subcommand("eig", "Eigendecomposition of a symmetric matrix");
  eig->add_option("--matrix", matrix, "Matrix file or inline JSON")->required();
  add_common(eig, common);

  auto* svdc = app.add_subcommand("svd", "Singular value decomposition");
  svdc->add_option("--matrix", matrix, "Matrix file or inline JSON")->required();
  add_common(svdc, common);

  auto* value = app.add_subcommand("value", "Evaluate f at a vector or f o lambda at a matrix");
  value->add_option("--function", function, "Function file")->required();
  value->add_option("--matrix", matrix, "Matrix file or inline JSON");
  value->add_option("--vector", vector, "Vector (rational strings) file or inline JSON");
  add_common(value, common);

  auto* strat = app.add_subcommand("stratify", "Stratification, duality pairing and lifted dims");
  strat->add_option("--function", function, "Function file")->required();
  add_common(strat, common);

  auto* prox = app.add_subcommand("prox-path", "Proximal point run with pattern trace");
  prox->add_option("--function", function, "Function file")->required();
  prox->add_option("--matrix", matrix, "Starting matrix X0")->required();
  prox->add_option("--t", t, "Prox step");
  prox->add_option("--max-iter", max_iter, "Iteration cap");
  add_common(prox, common);

  auto* verify = app.add_subcommand("verify", "Run a probe suite");
  verify->add_option("suite", suite, "Suite file")->required();
  add_common(verify, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*eig) emit(cmd_eig(matrix, common), common);
    else if (*svdc) emit(cmd_svd(matrix, common), common);
    else if (*value) emit(cmd_value(function, matrix, vector, common), common);
    else if (*strat) emit(cmd_stratify(function), common);
    else if (*prox) emit(cmd_prox_path(function, matrix, t, max_iter, common), common);
    else if (*verify) {
      json report = run_suite(read_json_file(suite), std::filesystem::path(suite).parent_path().string());
      report["command"] = "verify";
      bool pass = report.at("pass").get<bool>();
      emit(std::move(report), common);
      return pass ? 0 : 1;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
