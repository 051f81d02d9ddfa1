// Copyright 2026 The cvcluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include "gtest/gtest.h"

#include "test_util.hpp"

#include <filesystem>

using namespace cvcluster;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cvcluster");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    path_ = std::filesystem::temp_directory_path() /
            ("cvcluster_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             std::to_string(counter_++) + ".net");
    std::ofstream(path_, std::ios::binary) << contents;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  static inline int counter_ = 0;
  std::filesystem::path path_;
};

Json without_source(const std::string& text) {
  Json j = Json::parse(text);
  j.erase("source");
  return j;
}

}  // namespace

TEST(Cli, scheme_json_report) {
  const Outcome o = run_cli({"scheme", "--id", "1", "--input", "A", "--r", "0.5", "--theta", "1.5707963267948966"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json j = Json::parse(o.out);
  for (const char* key : {"source", "parameters", "conventions", "versions", "circuit", "ordering", "covariance", "Z",
                          "graph", "nullifier_check", "correlations"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["covariance"]["data"].size(), 64u);
  EXPECT_TRUE(j["graph"]["fully_connected"].get<bool>());
  EXPECT_TRUE(j["graph"]["fully_symmetric"].get<bool>());
  EXPECT_EQ(j["graph"]["edges"].size(), 6u);
  EXPECT_NEAR(j["Z"]["data"][0][1]["re"].get<double>(), -0.190398538988941, 1e-12);
  EXPECT_NEAR(j["Z"]["data"][0][1]["im"].get<double>(), -0.087986431584029, 1e-12);
  EXPECT_LT(j["nullifier_check"]["max_abs_deviation"].get<double>(), 1e-9);
  EXPECT_TRUE(j["circuit"]["symplectic"].get<bool>());
  EXPECT_TRUE(j["circuit"]["passive"].get<bool>());
}

TEST(Cli, scheme2_box_edges) {
  const Outcome o = run_cli({"scheme", "--id", "2", "--r", "0.5", "--theta", "1.5707963267948966"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json edges = Json::parse(o.out)["graph"]["edges"];
  ASSERT_EQ(edges.size(), 4u);
  const std::vector<std::pair<int, int>> expected{{0, 2}, {0, 3}, {1, 2}, {1, 3}};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(edges[k]["i"].get<int>(), expected[k].first);
    EXPECT_EQ(edges[k]["j"].get<int>(), expected[k].second);
  }
}

TEST(Cli, zero_squeezing_gives_identity_imaginary_part) {
  const Outcome o = run_cli({"scheme", "--id", "1", "--input", "R", "--r", "0"});
  ASSERT_EQ(o.code, 0) << o.err;
  const Json z = Json::parse(o.out)["Z"]["data"];
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(z[i][j]["re"].get<double>(), 0.0, 1e-15);
      EXPECT_NEAR(z[i][j]["im"].get<double>(), i == j ? 1.0 : 0.0, 1e-15);
    }
  }
  EXPECT_TRUE(Json::parse(o.out)["graph"]["edges"].empty());
}

TEST(Cli, csv_table) {
  const Outcome o = run_cli({"scheme", "--id", "1", "--input", "R", "--db", "-1.9", "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "label,first,second,sign,physical_sign,predicted_db,reference_db,reference_measured_db");
  std::getline(lines, line);
  EXPECT_EQ(line.rfind("H01+H10,H01,H10,+,", 0), 0u) << line;
  EXPECT_NE(line.find("-0.84691405490644"), std::string::npos) << line;
  int rows = 1;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 12);
}

TEST(Cli, deterministic_output) {
  const std::vector<std::string> args{"scheme", "--id", "1", "--input", "A", "--db", "-1.9", "--loss-t", "0.8"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(Cli, preset_and_netlist_reports_match) {
  const std::vector<std::pair<std::vector<std::string>, CircuitSpec>> cases = {
      {{"scheme", "--id", "1", "--input", "R", "--db", "-1.9"},
       scheme1_circuit(BeamKind::R, Squeezing{squeezing_from_db(-1.9).params.r(), 0.0, {}})},
      {{"scheme", "--id", "2", "--r", "0.5", "--theta", "0.25", "--loss-t", "0.9"},
       scheme2_circuit(Squeezing{0.5, 0.25, 0.9}, Squeezing{0.5, 0.25, 0.9})},
  };
  for (const auto& [args, spec] : cases) {
    const Outcome preset = run_cli(args);
    ASSERT_EQ(preset.code, 0) << preset.err;
    TempFile file(serialize_circuit(spec));
    const Outcome net = run_cli({"run", file.path()});
    ASSERT_EQ(net.code, 0) << net.err;
    EXPECT_EQ(without_source(preset.out).dump(2), without_source(net.out).dump(2));
  }
}

TEST(Cli, runs_sample_netlists) {
  for (const char* name : {"scheme1_radial.net", "scheme1_azimuthal.net", "scheme2.net"}) {
    const Outcome o = run_cli({"run", std::string(CVCLUSTER_NETLIST_DIR) + "/" + name, "--format", "csv"});
    EXPECT_EQ(o.code, 0) << name << ": " << o.err;
  }
}

TEST(Cli, usage_errors_exit_2) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"scheme"}).code, 2);
  EXPECT_EQ(run_cli({"scheme", "--id", "3"}).code, 2);
  EXPECT_EQ(run_cli({"scheme", "--id", "1"}).code, 2);
  EXPECT_EQ(run_cli({"scheme", "--id", "2", "--input", "R"}).code, 2);
  EXPECT_EQ(run_cli({"scheme", "--id", "1", "--input", "R", "--db", "-1", "--r", "0.2"}).code, 2);
  EXPECT_EQ(run_cli({"scheme", "--id", "1", "--input", "R", "--r", "-0.2"}).code, 2);
  EXPECT_EQ(run_cli({"scheme", "--id", "1", "--input", "R", "--loss-t", "1.2"}).code, 2);
  EXPECT_EQ(run_cli({"scheme", "--id", "1", "--input", "R", "--format", "xml"}).code, 2);
  EXPECT_EQ(run_cli({"scheme", "--id", "1", "--input", "R", "--epsilon", "0"}).code, 2);
}

TEST(Cli, parse_errors_exit_3_with_location) {
  TempFile bad("hwp a deg=22.5\n");
  Outcome o = run_cli({"run", bad.path()});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find(bad.path() + ":1:5: wiring error"), std::string::npos) << o.err;

  TempFile empty("");
  o = run_cli({"run", empty.path()});
  EXPECT_EQ(o.code, 3);
  EXPECT_NE(o.err.find("no outputs declared"), std::string::npos) << o.err;
}

TEST(Cli, missing_file_exits_4) {
  const Outcome o = run_cli({"run", "/nonexistent/cvcluster/none.net"});
  EXPECT_EQ(o.code, 4);
  EXPECT_TRUE(o.out.empty());
}

TEST(Cli, singular_covariance_exits_5) {
  // a position variance near 1e-12 makes C_qq near-singular
  TempFile file("port a\ninput a vacuum\nsqueeze a:H10 r=13 theta=0\nsqueeze a:V10 r=0.1 theta=0\n"
                "outputs a:H10 a:V10\n");
  const Outcome o = run_cli({"run", file.path()});
  EXPECT_EQ(o.code, 5) << o.err;
}
