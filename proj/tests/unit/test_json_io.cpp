#include <gtest/gtest.h>

#include "spectral/error.hpp"
#include "spectral/json_io.hpp"

using namespace spectral;

namespace {
const std::string kData = SPECTRAL_DATA_DIR;
}

TEST(JsonIo, Rationals) {
  EXPECT_EQ(rational_from_json(json("3/4")), Rational(3, 4));
  EXPECT_EQ(rational_from_json(json(-2)), Rational(-2));
  EXPECT_EQ(rational_from_json(json(0.5)), Rational(1, 2));
  EXPECT_THROW(rational_from_json(json("x")), InputError);
  EXPECT_THROW(rational_from_json(json::array()), InputError);
}

TEST(JsonIo, MatrixShape) {
  Matrix m = matrix_from_json(json::parse("[[1,2],[3,4]]"));
  EXPECT_EQ(m(1, 0), 3.0);
  EXPECT_THROW(matrix_from_json(json::parse("[[1,2],[3]]")), InputError);
  EXPECT_THROW(matrix_from_json(json::parse("[]")), InputError);
  EXPECT_EQ(matrix_from_json(to_json(m)), m);
}

TEST(JsonIo, InlineVersusPath) {
  EXPECT_EQ(read_json_arg("[1, 2]").size(), 2u);
  EXPECT_THROW(read_json_arg("/no/such/file.json"), InputError);
}

TEST(JsonIo, FunctionRoundTrip) {
  for (const char* name : {"l1_2", "nuclear_3", "neg_orthant_3", "cap_3"}) {
    FunctionSpec fs = load_function(kData + "/functions/" + name + ".json");
    FunctionSpec back = function_from_json(to_json(fs.f, fs.kind));
    EXPECT_EQ(back.f.pieces(), fs.f.pieces()) << name;
    EXPECT_EQ(back.f.constraints(), fs.f.constraints()) << name;
    EXPECT_EQ(back.kind, fs.kind) << name;
  }
}

TEST(JsonIo, FunctionValidation) {
  json j = json::parse(R"({"dimension": 2, "pieces": [{"a": ["1"], "b": "0"}], "symmetry_mode": "plain"})");
  EXPECT_THROW(function_from_json(j), InputError);
  j = json::parse(R"({"dimension": 2, "pieces": [], "symmetry_mode": "plain"})");
  EXPECT_THROW(function_from_json(j), InputError);
  j = json::parse(R"({"dimension": 1, "pieces": [{"a": ["1"], "b": "0"}], "symmetry_mode": "weird"})");
  EXPECT_THROW(function_from_json(j), InputError);
}

TEST(JsonIo, PartitionsAreOneBased) {
  Partition p = partition_of(Vec{2, 2, 1}, 1e-9);
  json j = to_json(p);
  EXPECT_EQ(j.dump(), "[[1,2],[3]]");
}

TEST(JsonIo, ReportInfinity) {
  ProbeReport r;
  r.name = "x";
  r.measured = std::numeric_limits<double>::infinity();
  EXPECT_EQ(to_json(r).at("measured"), "inf");
}

TEST(JsonIo, StratificationReport) {
  FunctionSpec fs = load_function(kData + "/functions/l1_2.json");
  json r = stratification_report(SpectralFn(fs.f, fs.kind));
  EXPECT_EQ(r.at("strata").size(), 9u);
  EXPECT_EQ(r.at("dual_strata").size(), 9u);
  EXPECT_TRUE(r.at("bijection_certified").get<bool>());
  EXPECT_FALSE(r.at("lifted").is_null());
  FunctionSpec nuc = load_function(kData + "/functions/nuclear_3.json");
  EXPECT_TRUE(stratification_report(SpectralFn(nuc.f, nuc.kind)).at("lifted").is_null());
}

TEST(JsonIo, SuiteEmptyPasses) {
  json r = run_suite(json::parse(R"({"name": "e", "probes": []})"), kData);
  EXPECT_TRUE(r.at("pass").get<bool>());
}

TEST(JsonIo, SuiteUnknownProbe) {
  json s = json::parse(R"({"name": "e", "probes": [{"name": "a", "probe": "nope"}]})");
  EXPECT_THROW(run_suite(s, kData), InputError);
}

TEST(JsonIo, DefaultSuitePasses) {
  json r = run_suite(read_json_file(kData + "/suites/default.json"), kData + "/suites");
  EXPECT_TRUE(r.at("pass").get<bool>()) << r.dump(1);
  auto reports = r.at("reports");
  for (std::size_t i = 1; i < reports.size(); ++i)
    EXPECT_LE(reports[i - 1].at("name").get<std::string>(), reports[i].at("name").get<std::string>());
}
