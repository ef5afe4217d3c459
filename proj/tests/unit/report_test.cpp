#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <sstream>

#include "slcert/report.hpp"

namespace slcert {
namespace {

using nlohmann::json;

const json* find_record(const json& rep, const char* method, double re_p, double im_p) {
  for (const json& r : rep["records"]) {
    if (r["method"] == method && r["re_p"] == re_p && r["im_p"] == im_p) return &r;
  }
  return nullptr;
}

TEST(Certify, ClosedSweepPasses) {
  const CommandOutcome out = run_certify({.eps = 0.25, .grid = 200, .method = Method::Closed});
  EXPECT_EQ(out.exit_code, ExitCode::Pass);
  EXPECT_GT(out.report["min_margin"].get<double>(), 0.0);
  const json* origin = find_record(out.report, "closed", 0.0, 0.0);
  ASSERT_NE(origin, nullptr);
  EXPECT_NEAR((*origin)["margin"].get<double>(), 0.375, 1e-15);
  EXPECT_TRUE(out.report["identity_checks"]["pass"].get<bool>());
  EXPECT_LE(out.report["identity_checks"]["chain_I_max_reldev"].get<double>(), 1e-10);
}

TEST(Certify, BothMethodsAgreeAtOrigin) {
  const CommandOutcome out = run_certify({.eps = 0.19, .grid = 64, .method = Method::Both});
  EXPECT_EQ(out.exit_code, ExitCode::Pass);
  const json* closed = find_record(out.report, "closed", 0.0, 0.0);
  const json* hessian = find_record(out.report, "hessian", 0.0, 0.0);
  ASSERT_NE(closed, nullptr);
  ASSERT_NE(hessian, nullptr);
  EXPECT_NEAR((*closed)["margin"].get<double>(), 0.3078, 1e-12);
  // At p = 0 the canonical tangent has length 0.9 sqrt(1 + 0.81) in any rotation.
  EXPECT_NEAR((*hessian)["margin"].get<double>(), 0.3078, 1e-4 * 0.3078);
  EXPECT_LE(out.report["identity_checks"]["hessian_closed_max_reldev"].get<double>(), 1e-4);
}

TEST(Certify, RejectsInvalidParameters) {
  EXPECT_EQ(run_certify({.eps = 1.5}).exit_code, ExitCode::InvalidInput);
  EXPECT_EQ(run_certify({.eps = 0.0}).exit_code, ExitCode::InvalidInput);
  EXPECT_EQ(run_certify({.eps = 0.25, .grid = 15}).exit_code, ExitCode::InvalidInput);
  EXPECT_THROW(parse_method("newton"), std::invalid_argument);
}

TEST(Certify, ReportIsConsistent) {
  const CommandOutcome out = run_certify({.eps = 0.1, .grid = 32, .method = Method::Both, .seed = 9});
  const json& rep = out.report;
  double min_margin = std::numeric_limits<double>::infinity();
  std::size_t failing = 0;
  for (const json& r : rep["records"]) {
    min_margin = std::min(min_margin, r["margin"].get<double>());
    EXPECT_EQ(r["pass"].get<bool>(), r["margin"].get<double>() > 0.0);
    failing += !r["pass"].get<bool>();
  }
  EXPECT_EQ(rep["min_margin"].get<double>(), min_margin);
  EXPECT_EQ(rep["violations"].size(), failing);
  EXPECT_EQ(rep["records"].size(), out.records.size());
  for (const char* key : {"command", "params", "seed", "counts", "min_margin", "argmin",
                          "violations", "identity_checks", "elapsed_ms", "version"}) {
    EXPECT_TRUE(rep.contains(key)) << key;
  }
}

TEST(Certify, DeterministicApartFromTiming) {
  const CertifyOptions opts{.eps = 0.25, .grid = 24, .method = Method::Both, .seed = 1234};
  const std::string a = dump_report(without_timing(run_certify(opts).report));
  const std::string b = dump_report(without_timing(run_certify(opts).report));
  EXPECT_EQ(a, b);
  const CertifyOptions other{.eps = 0.25, .grid = 24, .method = Method::Both, .seed = 99};
  EXPECT_NE(dump_report(without_timing(run_certify(other).report))
                .find("\"seed\": 99"),
            std::string::npos);
}

TEST(Certify, CsvProjection) {
  const CommandOutcome out = run_certify({.eps = 0.25, .grid = 16});
  const std::string csv = records_csv(out.records);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "re_p,im_p,eps,method,margin,pass");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, out.records.size());
}

TEST(Slice, ZeroLinesAndBadResolution) {
  const CommandOutcome none = run_slice({.eps = 0.25, .lines = 0});
  EXPECT_EQ(none.exit_code, ExitCode::Pass);
  EXPECT_TRUE(none.report["lines"].empty());
  EXPECT_EQ(run_slice({.eps = 0.25, .lines = 5, .resolution = 8}).exit_code,
            ExitCode::InvalidInput);
  EXPECT_EQ(run_slice({.eps = 2.0, .lines = 5}).exit_code, ExitCode::InvalidInput);
}

TEST(Slice, SmallRunPasses) {
  const CommandOutcome out = run_slice({.eps = 0.25, .lines = 10, .resolution = 128, .seed = 3});
  EXPECT_EQ(out.exit_code, ExitCode::Pass);
  EXPECT_EQ(out.report["lines"].size(), 10u);
}

TEST(Exhaust, ExitCodes) {
  EXPECT_EQ(run_exhaust({.eps_list = {0.4, 0.2, 0.1, 0.05}, .samples = 10000}).exit_code,
            ExitCode::Pass);
  EXPECT_EQ(run_exhaust({.eps_list = {0.1, 0.2}, .samples = 100}).exit_code,
            ExitCode::InvalidInput);
  EXPECT_EQ(run_exhaust({.eps_list = {0.3}, .samples = 100}).exit_code, ExitCode::Pass);
}

TEST(Witness, ConvexModelPasses) {
  const CommandOutcome out =
      run_witness({.eps = 0.25, .mode = WitnessMode::ConvexG, .samples = 100000});
  EXPECT_EQ(out.exit_code, ExitCode::Pass);
  EXPECT_TRUE(out.report["witness"].is_null());
}

TEST(Witness, NonconvexSearchFindsVerifiedSegment) {
  const CommandOutcome out = run_witness({.eps = 0.01, .mode = WitnessMode::NonconvexD});
  ASSERT_EQ(out.exit_code, ExitCode::Pass);
  EXPECT_TRUE(out.report["witness"]["verified"].get<bool>());
  EXPECT_GT(out.report["witness"]["midpoint_residual"].get<double>(), 0.0);
}

TEST(Witness, InconclusivePath) {
  const CommandOutcome out =
      run_witness({.eps = 0.9, .mode = WitnessMode::NonconvexD, .samples = 10});
  EXPECT_TRUE(out.exit_code == ExitCode::Inconclusive || out.exit_code == ExitCode::Pass);
  EXPECT_EQ(run_witness({.eps = 1.0}).exit_code, ExitCode::InvalidInput);
  EXPECT_THROW(parse_witness_mode("concave"), std::invalid_argument);
}

}  // namespace
}  // namespace slcert
