#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "soliton/errors.hpp"
#include "soliton/picard.hpp"
#include "soliton/profile_io.hpp"
#include "soliton/report_io.hpp"
#include "soliton/verifier.hpp"

using namespace soliton;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("soliton_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::create_directories(dir);
  return dir / name;
}

int parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_profile_csv(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(FormatDouble, SeventeenDigitsAndSpecials) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(NAN), "nan");
  EXPECT_EQ(format_double(INFINITY), "inf");
  EXPECT_EQ(format_double(-INFINITY), "-inf");
  EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}

TEST(ProfileCsv, RoundTripIsLossless) {
  const auto p = integrate_profile(SpeedSpec::sigma_k(3, 2), {.r_max = 1.5});
  const fs::path path = scratch("rt.csv");
  save_profile(p, path);
  EXPECT_TRUE(fs::exists(sidecar_path(path)));
  EXPECT_EQ(sidecar_path(path).extension(), ".json");
  const auto q = load_profile(path);
  ASSERT_EQ(q.samples.size(), p.samples.size());
  for (std::size_t i = 0; i < p.samples.size(); ++i) {
    EXPECT_EQ(q.samples[i].r, p.samples[i].r);
    EXPECT_EQ(q.samples[i].u, p.samples[i].u);
    EXPECT_EQ(q.samples[i].du, p.samples[i].du);
    EXPECT_EQ(q.samples[i].ddu, p.samples[i].ddu);
  }
  EXPECT_EQ(q.speed, p.speed);
  EXPECT_EQ(q.startup_slope, p.startup_slope);
  EXPECT_EQ(q.status, p.status);
  EXPECT_EQ(q.tolerances.rtol, p.tolerances.rtol);
  std::ostringstream a, b;
  write_profile_csv(a, p);
  write_profile_csv(b, q);
  EXPECT_EQ(a.str(), b.str());
}

TEST(ProfileCsv, DerivedColumns) {
  const auto p = integrate_profile(SpeedSpec::sigma_k(2, 2), {.r_max = 3.0});
  double worst = 0.0;
  for (const auto& row : profile_rows(p)) {
    EXPECT_EQ(row.tilt, 1 / std::hypot(1.0, row.du));
    EXPECT_NEAR(row.gamma, std::sqrt(row.lambda1 * row.lambda2), 1e-15 * row.gamma + 1e-300);
    worst = std::max(worst, std::abs(row.residual));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(ProfileCsv, ParseErrorsCarryLineNumbers) {
  const std::string header = std::string(kProfileCsvHeader) + "\n";
  const std::string good = "0.1,0,0.1,1,1,1,1,1,0\n";
  EXPECT_EQ(parse_error_line(""), 1);
  EXPECT_EQ(parse_error_line("r,u\n" + good), 1);
  EXPECT_EQ(parse_error_line(header), 1);
  EXPECT_EQ(parse_error_line(header + good + "0.2,0,x,1,1,1,1,1,0\n"), 3);
  EXPECT_EQ(parse_error_line(header + good + "0.2,0,1\n"), 3);
  EXPECT_EQ(parse_error_line(header + good + good), 3);
  EXPECT_EQ(parse_error_line(header + good + "0.2,0,1,1,1,1,1,1,0,9\n"), 3);
  std::istringstream ok(header + good + "0.2,0,0.2,1,1,1,nan,1,nan\n");
  EXPECT_EQ(read_profile_csv(ok).size(), 2u);
}

TEST(ProfileCsv, MissingSidecarAndBadMetadata) {
  const fs::path path = scratch("lonely.csv");
  {
    std::ofstream out(path);
    out << kProfileCsvHeader << "\n0.1,0,0.1,1,1,1,1,1,0\n";
  }
  fs::remove(sidecar_path(path));
  EXPECT_THROW(load_profile(path), ParseError);
  EXPECT_THROW(parse_metadata_json("{"), ParseError);
  EXPECT_THROW(parse_metadata_json(R"({"n":3,"speed":"quotient","k":null,"startup_slope":1,"startup_radius":1,
    "blowup_radius":null,"status":"completed","tolerances":{"rtol":1,"atol":1,"blowup_threshold":1}})"),
               ParseError);
}

TEST(Metadata, Fields) {
  const auto p = integrate_profile(SpeedSpec::harmonic(3), {.r_max = 0.5});
  const auto j = nlohmann::json::parse(metadata_json(metadata_of(p)));
  for (const char* key : {"n", "speed", "k", "startup_slope", "startup_radius", "blowup_radius", "status", "tolerances"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["speed"], "harmonic");
  EXPECT_EQ(j["equation"], "published");
  EXPECT_TRUE(j["k"].is_null());
  EXPECT_EQ(parse_metadata_json(metadata_json(metadata_of(p))).startup_slope, p.startup_slope);
}

TEST(ReportJson, Schema) {
  VerificationReport r;
  r.profile = metadata_of(integrate_profile(SpeedSpec::sigma_k(3, 2), {.r_max = 1.0}));
  r.add(check_soliton(integrate_profile(SpeedSpec::sigma_k(3, 2), {.r_max = 1.0})));
  const auto j = nlohmann::json::parse(to_json(r));
  EXPECT_TRUE(j["passed"].get<bool>());
  const auto& c = j["checks"][0];
  EXPECT_EQ(c["name"], "soliton residual");
  EXPECT_EQ(c["status"], "pass");
  EXPECT_TRUE(c["witness"].contains("r"));
  EXPECT_TRUE(c["witness"]["values"].is_object());
  EXPECT_EQ(to_json(r), to_json(r));
}

TEST(ReportJson, PicardLog) {
  PicardOptions o;
  o.m = 129;
  const auto res = picard_solve(3, o);
  const auto j = nlohmann::json::parse(to_json(res, "fp.csv"));
  EXPECT_EQ(j["n"], 3);
  EXPECT_EQ(j["m"], 129);
  EXPECT_EQ(j["fixed_point_csv_path"], "fp.csv");
  ASSERT_FALSE(j["iterations"].empty());
  EXPECT_TRUE(j["iterations"][0]["contraction_ratio"].is_null());
  EXPECT_TRUE(j["iterations"][1]["contraction_ratio"].is_number());
  std::ostringstream csv;
  write_grid_csv(csv, res.fixed_point);
  EXPECT_EQ(csv.str().substr(0, 4), "r,w\n");
}
