#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "lzcontrol/io.hpp"
#include "oracles.hpp"

using namespace lzcontrol;

namespace {

ControlField parse(const std::string& text) {
  std::istringstream in(text);
  return read_control_csv(in);
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  ADD_FAILURE() << "expected ParseError";
  return 0;
}

}  // namespace

TEST(ControlCsv, RoundTripIsBitExact) {
  std::mt19937_64 rng(61);
  for (auto [n, tf] : {std::pair<std::size_t, double>{1024, 1.0}, {77, 0.3}, {3, 20.0}, {1, 1.0}}) {
    const ControlField c = oracle::random_field(rng, TimeGrid(n, tf), ShapeFunction{}, 50.0);
    std::stringstream s;
    write_control_csv(s, c);
    const ControlField back = read_control_csv(s);
    ASSERT_EQ(back.grid(), c.grid());
    for (std::size_t k = 0; k < n; ++k) ASSERT_EQ(back[k], c[k]);
  }
}

TEST(ControlCsv, ShapeComesFromCaller) {
  std::stringstream s;
  write_control_csv(s, ControlField(TimeGrid(4, 1.0), ShapeFunction{}));
  EXPECT_EQ(read_control_csv(s, ShapeFunction(2.0)).shape(), ShapeFunction(2.0));
}

TEST(ControlCsv, CommentsAndBlankLinesAreSkipped) {
  const ControlField c = parse("# comment\nt,C\n\n0.25,1\n0.75,2\n");
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1], 2.0);
  EXPECT_EQ(c.grid().final_time(), 1.0);
}

TEST(ControlCsv, Errors) {
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("t,C\n"), ParseError);
  EXPECT_EQ(parse_error_line("t,C\n0.25,1\n0.75\n"), 3u);
  EXPECT_EQ(parse_error_line("t,C\n0.25,1\n0.75,x\n"), 3u);
  EXPECT_EQ(parse_error_line("t,C\n0.25,1\n0.75,nan\n"), 3u);
  EXPECT_EQ(parse_error_line("t,C\n0.25,1\n0.75,2,3\n"), 3u);
  // non-uniform grid
  EXPECT_EQ(parse_error_line("t,C\n0.125,1\n0.375,1\n0.7,1\n0.875,1\n"), 4u);
}

TEST(ControlCsv, MissingFileIsIoError) {
  EXPECT_THROW(read_control_csv(std::filesystem::path("/nonexistent/dir/control.csv")), IoError);
  EXPECT_THROW(write_text_file("/nonexistent/dir/out.txt", "x"), IoError);
}

TEST(FormatDouble, Lossless) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(i % 40) - 20);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(Json, MetricsAndStatsFields) {
  const ControlField c = initial_square_pulse(std::numbers::pi, TimeGrid(), ShapeFunction{});
  OptResult r = summarize(c, GateTarget::z_rotation(std::numbers::pi), {.alpha = 0.0, .epsilon0 = 0.0});
  const auto m = metrics_json(r);
  for (const char* key : {"delta", "eta_r_norm", "fluence", "theta_tf", "max_abs_C", "iters", "eta", "J", "stop_reason"})
    EXPECT_TRUE(m.contains(key)) << key;
  EXPECT_EQ(m["eta"].size(), 5u);
  EnsembleStats st;
  st.mean = 0.5;
  const auto j = stats_json(st);
  EXPECT_EQ(j["mean"].get<double>(), 0.5);
  EXPECT_TRUE(j.contains("std"));
}

TEST(Csv, SweepAndHistoryLayouts) {
  SweepResult s;
  s.epsilon = {0.0, 0.5};
  s.delta = {1e-3, 2e-3};
  std::ostringstream o;
  write_sweep_csv(o, s);
  EXPECT_EQ(o.str(), "epsilon,delta\n0,0.001\n0.5,0.002\n");
  OptResult r{.control = ControlField(TimeGrid(2, 1.0), ShapeFunction{}), .eta = {}, .history = {{1.0, 0.5, 0.0}}};
  std::ostringstream h;
  write_history_csv(h, r);
  EXPECT_EQ(h.str(), "iter,J,delta,eta_r_norm\n0,1,0.5,0\n");
}
