#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "mate4/builtin_curves.hpp"
#include "mate4/csv_io.hpp"
#include "mate4/error.hpp"
#include "mate4/report_json.hpp"

using namespace mate4;
namespace fs = std::filesystem;

namespace {

class Io : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mate4_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no mate4::Error thrown";
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST_F(Io, FramedRoundTripIsExact) {
  const auto nodes = framed_nodes(example38::framed(), Grid::spanning(0.0, 2 * std::numbers::pi, 50));
  write_framed_csv(path("f.csv"), nodes);
  const auto back = read_framed_csv(path("f.csv"));
  ASSERT_EQ(back.size(), nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    EXPECT_EQ(back[i].t, nodes[i].t);
    EXPECT_EQ(back[i].gamma.x, nodes[i].gamma.x);
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(back[i].frame.nu(k).x, nodes[i].frame.nu(k).x);
    EXPECT_LT(max_abs(back[i].frame.mu - nodes[i].frame.mu), 1e-15);
  }
}

TEST_F(Io, CurvatureAndCurveRoundTrip) {
  CurvatureTable tab;
  CurveTable curve;
  for (int i = 0; i < 10; ++i) {
    tab.t.push_back(0.1 * i);
    tab.k.push_back(example38::curvature(0.1 * i));
    curve.t.push_back(0.1 * i);
    curve.x.push_back({1.0 / 3, -0.0, 1e-300, 0.1 * i});
  }
  write_curvature_csv(path("k.csv"), tab);
  write_curve_csv(path("c.csv"), curve);
  const auto k = read_curvature_csv(path("k.csv"));
  const auto c = read_curve_csv(path("c.csv"));
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(k.k[i].values(), tab.k[i].values());
    EXPECT_EQ(c.x[i].x, curve.x[i].x);
  }
  std::ifstream in(path("c.csv"));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,x1,x2,x3,x4");
}

TEST_F(Io, Errors) {
  EXPECT_EQ(code_of([&] { read_curve_csv(path("missing.csv")); }), ErrorCode::Io);
  write("bad_header.csv", "t,y1,y2,y3,y4\n0,0,0,0,0\n");
  EXPECT_EQ(code_of([&] { read_curve_csv(path("bad_header.csv")); }), ErrorCode::InvalidInput);
  write("bad_cell.csv", "t,x1,x2,x3,x4\n0,0,abc,0,0\n");
  EXPECT_EQ(code_of([&] { read_curve_csv(path("bad_cell.csv")); }), ErrorCode::InvalidInput);
  write("short_row.csv", "t,x1,x2,x3,x4\n0,0,0,0\n");
  EXPECT_EQ(code_of([&] { read_curve_csv(path("short_row.csv")); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([&] { write_curve_csv((dir_ / "no" / "such" / "dir.csv").string(), {}); }), ErrorCode::Io);
}

TEST(Spacing, UniformAndNot) {
  EXPECT_DOUBLE_EQ(uniform_spacing({0.0, 0.5, 1.0, 1.5}), 0.5);
  EXPECT_EQ(code_of([] { uniform_spacing({0.0, 0.5, 1.1}); }), ErrorCode::GridMismatch);
  EXPECT_EQ(code_of([] { uniform_spacing({1.0, 0.5, 0.0}); }), ErrorCode::GridMismatch);
}

TEST(FormatDouble, RoundTripsAndDropsNegativeZero) {
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(0.5), "0.5");
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(v)), v);
}

TEST(ReportJson, Fields) {
  ConditionReport r;
  r.verdict = Verdict::pass;
  r.residual_sup = 1e-12;
  r.details["cond1"] = 0.0;
  r.details["h_min"] = 0.25;
  const auto j = to_json(r);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["residual_sup"], 1e-12);
  EXPECT_EQ(j["details"]["h_min"], 0.25);
  EXPECT_EQ(j.size(), 3u);
  EXPECT_EQ(verdict_name(Verdict::fail), "fail");
}
