#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "qnlse/report.hpp"

using namespace qnlse;

namespace {

Report sample_report() {
  Report r;
  r.add("command", std::string("residual"));
  r.add("q", 1.5);
  r.add("third", 1.0 / 3.0);
  r.add("tiny", 5.9787339602818165e-16);
  r.add("negative", -2.718281828459045);
  r.add("samples", std::int64_t{1111});
  r.add("passed", true);
  ResidualReport res;
  res.max_abs = 1.25e-9;
  res.l2 = 3.5e-9;
  res.worst_x = -0.3;
  res.worst_t = 0.7;
  res.n_samples = 1111;
  res.equation_tag = "nrt";
  r.add("residual", res);
  return r;
}

double as_double(const ReportValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  ADD_FAILURE() << "not numeric";
  return NAN;
}

void expect_same_numbers(const Report& a, const Report& b) {
  ASSERT_EQ(a.entries().size(), b.entries().size());
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    const auto& [key, value] = a.entries()[i];
    EXPECT_EQ(key, b.entries()[i].first);
    const auto& other = b.entries()[i].second;
    if (std::holds_alternative<std::string>(value) || std::holds_alternative<bool>(value)) {
      EXPECT_EQ(value, other) << key;
    } else {
      EXPECT_EQ(as_double(value), as_double(other)) << key;
    }
  }
}

}  // namespace

TEST(Report, AddsResidualFieldsUnderPrefix) {
  const auto r = sample_report();
  ASSERT_NE(r.find("residual.max_abs"), nullptr);
  EXPECT_EQ(std::get<double>(*r.find("residual.max_abs")), 1.25e-9);
  ASSERT_NE(r.find("residual.equation"), nullptr);
  EXPECT_EQ(std::get<std::string>(*r.find("residual.equation")), "nrt");
  EXPECT_EQ(r.find("missing"), nullptr);
}

TEST(Report, CsvHasKeyValueHeader) {
  const auto csv = sample_report().to_csv();
  EXPECT_EQ(csv.rfind("key,value\n", 0), 0u);
  EXPECT_NE(csv.find("\nthird,0.33333333333333331\n"), std::string::npos) << csv;
}

TEST(Report, CsvRoundTrip) { expect_same_numbers(sample_report(), Report::from_csv(sample_report().to_csv())); }

TEST(Report, JsonRoundTrip) { expect_same_numbers(sample_report(), Report::from_json(sample_report().to_json())); }

TEST(Report, CsvAndJsonCarryIdenticalValues) {
  const auto r = sample_report();
  expect_same_numbers(Report::from_csv(r.to_csv()), Report::from_json(r.to_json()));
}

TEST(Report, JsonPreservesKeyOrder) {
  const auto json = sample_report().to_json();
  EXPECT_LT(json.find("\"command\""), json.find("\"q\""));
  EXPECT_LT(json.find("\"q\""), json.find("\"third\""));
  EXPECT_LT(json.find("\"passed\""), json.find("\"residual.max_abs\""));
}

TEST(Report, RandomDoublesSurviveBothFormats) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  Report r;
  for (int i = 0; i < 200; ++i) {
    r.add("v" + std::to_string(i), std::ldexp(mant(rng), expo(rng)));
  }
  expect_same_numbers(r, Report::from_csv(r.to_csv()));
  expect_same_numbers(r, Report::from_json(r.to_json()));
}

TEST(Report, MalformedInputIsRejected) {
  EXPECT_THROW(Report::from_csv("not,a,header\n"), std::invalid_argument);
  EXPECT_THROW(Report::from_csv("key,value\nmissing_comma\n"), std::invalid_argument);
  EXPECT_THROW(Report::from_json("{ broken"), std::invalid_argument);
  EXPECT_THROW(Report::from_json("[1, 2]"), std::invalid_argument);
}

TEST(FormatNumber, SeventeenSignificantDigits) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(std::stod(format_number(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
}

TEST(FrameOutput, CsvSchemaAndRows) {
  GridSpec g;
  g.x_min = 0.0;
  g.x_max = 1.0;
  g.n_points = 3;
  const auto frame = WaveField::sample(g, 0.25, [](double x, double t) { return Complex(x, -t); });
  const auto csv = frame_to_csv(frame);
  EXPECT_EQ(csv, "x,t,re,im\n0,0.25,0,-0.25\n0.5,0.25,0.5,-0.25\n1,0.25,1,-0.25\n");
}

TEST(FrameOutput, FileNames) {
  EXPECT_EQ(frame_file_name(0), "frame_000000.csv");
  EXPECT_EQ(frame_file_name(1), "frame_000001.csv");
  EXPECT_EQ(frame_file_name(123456), "frame_123456.csv");
}

TEST(FrameOutput, SvgHasThreePolylines) {
  GridSpec g;
  g.n_points = 11;
  const auto frame = WaveField::sample(g, 0.0, [](double x, double) { return std::polar(1.0, x); });
  const auto svg = frame_to_svg(frame, "plane wave");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  std::size_t count = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++count;
  EXPECT_EQ(count, 3u);
  EXPECT_NE(svg.find("plane wave"), std::string::npos);
  EXPECT_EQ(svg, frame_to_svg(frame, "plane wave"));
}

TEST(FrameOutput, CurvesSvg) {
  const std::vector<double> x{0.0, 1.0, 2.0};
  const auto svg = curves_to_svg(x, {{"a", {1.0, 2.0, 3.0}}, {"b", {0.0, -1.0, 0.5}}}, "curves");
  std::size_t count = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++count;
  EXPECT_EQ(count, 2u);
}
