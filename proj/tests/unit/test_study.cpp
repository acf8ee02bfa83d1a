#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "stfem/error.hpp"
#include "stfem/study.hpp"

using namespace stfem;

namespace {

const char* kConfig = R"(# heat study
[method]
scheme = heat-jamet
nu = 1.0

[space]
elements = 64
p = 2

[time]
T = 1.0
slabs = 2
q = 1

[study]
refine = tau
levels = 3
solution = heat_sine
norms = LinfL2, L2QT

[output]
format = csv
)";

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoFailure;
}

}  // namespace

TEST(Config, ParseFile) {
  const auto c = parse_config(kConfig);
  EXPECT_EQ(c.method.scheme, Scheme::HeatJamet);
  EXPECT_EQ(c.elements, 64u);
  EXPECT_EQ(c.method.p, 2);
  EXPECT_EQ(c.method.q, 1);
  EXPECT_EQ(c.refine, RefineAxis::Tau);
  EXPECT_EQ(c.levels, 3);
  ASSERT_EQ(c.norms.size(), 2u);
  EXPECT_EQ(c.norms[1].kind, NormKind::L2QT);
  EXPECT_EQ(c.format, ReportFormat::Csv);
}

TEST(Config, RejectsUnknownKeysAndSections) {
  EXPECT_EQ(code_of([] { parse_config("[method]\nspeed = 3\n"); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("[solver]\nx = 1\n"); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("[time]\nslabs = many\n"); }), ErrorCode::ConfigInvalid);
}

TEST(Config, FlagOverridesAndValidation) {
  auto c = parse_config(kConfig);
  set_config_value(c, "time", "q", "2");
  EXPECT_EQ(c.method.q, 2);
  set_config_value(c, "study", "solution", "wave_standing");
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("[time]\nslabs = 0\n").validate(); }), ErrorCode::ConfigInvalid);
}

TEST(Config, JsonRoundTrip) {
  const auto c = parse_config(kConfig);
  EXPECT_TRUE(config_from_json(config_to_json(c)) == c);
}

TEST(Study, TauRefinementAndReport) {
  const auto c = parse_config(kConfig);
  const auto r = run_study(c);
  ASSERT_EQ(r.levels.size(), 3u);
  EXPECT_EQ(r.levels[2].slabs, 8u);
  EXPECT_DOUBLE_EQ(r.levels[2].param, 0.125);
  ASSERT_TRUE(r.preflight);
  EXPECT_EQ(r.preflight->axis, "h");
  ASSERT_EQ(r.orders.size(), 2u);
  ASSERT_EQ(r.orders[0].size(), 2u);
  ASSERT_TRUE(r.orders[0][1]);
  EXPECT_NEAR(*r.orders[0][1], 2.0, 0.3);
  const auto csv = emit_report(r, ReportFormat::Csv);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "level,param,LinfL2,L2QT,eoc_LinfL2,eoc_L2QT");
  // bitwise determinism of the emitted JSON (timings are excluded from comparison)
  auto strip = [](StudyReport x) {
    for (auto& l : x.levels) l.wall_seconds = 0;
    return emit_report(x, ReportFormat::Json);
  };
  EXPECT_EQ(strip(r), strip(run_study(c)));
  EXPECT_TRUE(report_from_json(report_to_json(r)) == r);
}

TEST(Study, ZeroDataGivesNullOrders) {
  auto c = parse_config(kConfig);
  set_config_value(c, "study", "solution", "zero");
  c.preflight = false;
  const auto r = run_study(c);
  for (const auto& l : r.levels)
    for (double e : l.errors) EXPECT_EQ(e, 0.0);
  for (const auto& col : r.orders)
    for (const auto& o : col) EXPECT_FALSE(o);
  EXPECT_NE(emit_report(r, ReportFormat::Json).find("null"), std::string::npos);
}

TEST(Study, PreflightNamesContaminatingAxis) {
  auto c = parse_config(kConfig);
  c.elements = 2;
  c.method.p = 1;
  try {
    run_study(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigInvalid);
    EXPECT_NE(std::string(e.what()).find("h-axis"), std::string::npos);
  }
}

TEST(Study, WriteReportFile) {
  auto c = parse_config(kConfig);
  c.levels = 1;
  c.refine = RefineAxis::None;
  const auto r = run_study(c);
  const auto path = std::filesystem::temp_directory_path() / "stfem_report_test.csv";
  write_report(r, ReportFormat::Csv, path.string());
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "level,param,LinfL2,L2QT,eoc_LinfL2,eoc_L2QT");
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([&] { write_report(r, ReportFormat::Csv, "/nonexistent/dir/x.csv"); }), ErrorCode::IoFailure);
}
