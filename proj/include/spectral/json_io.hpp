#pragma once
// JSON encoding of the library types. Exact data travels as rational
// strings ("3/4"), numeric data as decimal floats; permutations and
// partitions are 1-based.

#include <string>

#include <json.hpp>

#include "spectral/idlab.hpp"

namespace spectral {

using json = nlohmann::json;

json read_json_file(const std::string& path);
/// Inline JSON when the argument starts with '[' or '{', otherwise a path.
json read_json_arg(const std::string& arg);

Rational rational_from_json(const json& j);
QVec qvec_from_json(const json& j);
Vec vec_from_json(const json& j);
Matrix matrix_from_json(const json& j);

struct FunctionSpec {
  MaxAffineFn f;
  SpectralKind kind = SpectralKind::eigenvalue;
};

/// {"name", "dimension", "pieces": [{"a": [...], "b": "0"}],
///  "constraints": [{"c": [...], "d": "0"}], "symmetry_mode", "kind"}
FunctionSpec function_from_json(const json& j);
FunctionSpec load_function(const std::string& path);
json to_json(const MaxAffineFn& f, SpectralKind kind);

json to_json(const Matrix& m);
json to_json(const Vec& v);
json to_json(const QVec& v);
json to_json(const Partition& p);
json to_json(const Permutation& p);
json to_json(const GenPolyhedron& p);
json to_json(const ProbeReport& r);
json to_json(const IdentificationTrace& t);

/// Strata, closure order, orbits, the duality pairing and lifted dims.
json stratification_report(const SpectralFn& f);

/// Runs every probe of a suite {"name", "probes": [...]} and returns
/// {"suite", "pass", "reports"} with reports sorted by name. Relative
/// function paths resolve against base_dir.
json run_suite(const json& suite, const std::string& base_dir);

}  // namespace spectral
