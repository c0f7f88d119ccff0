// Copyright 2026 The ddatom Authors
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

// End-to-end tests of the installed ddatom executable. The build injects the
// binary location as DDATOM_CLI_PATH.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args, const std::string& env_prefix = "",
              bool merge_stderr = false) {
  std::string cmd = std::string(DDATOM_CLI_PATH) + " " + args +
                    (merge_stderr ? " 2>&1" : " 2>/dev/null");
  if (!env_prefix.empty()) cmd = "env " + env_prefix + " " + cmd;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.output.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& csv_line) {
  std::vector<std::string> fields;
  std::istringstream in(csv_line);
  std::string field;
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

const char* kSpectrumHeader =
    "D,l,n_r,Z,family,convention,energy_hartree,nodes,grid_points,"
    "extrapolated,estimated_order";

const char* kScanHeader =
    "D,classification,energy_hartree,classical_minimum,harmonic_estimate,"
    "ratio,predicted_ratio";

}  // namespace

TEST_CASE("spectrum emits the documented CSV schema") {
  const auto r = run("spectrum --dim 3 --states 2 --points 3000 --r-max 30");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kSpectrumHeader);

  const auto row = fields_of(lines[1]);
  REQUIRE(row.size() == 11);
  CHECK(row[0] == "3");
  CHECK(row[1] == "0");
  CHECK(row[2] == "0");
  CHECK(row[3] == "1");
  CHECK(row[4] == "newtonian");
  CHECK(row[5] == "gaussian-4pi");
  CHECK(std::fabs(std::stod(row[6]) + 0.5) < 1e-6);
  CHECK(row[7] == "0");
  CHECK(row[9] == "true");
  CHECK(std::stod(row[10]) > 1.7);

  const auto excited = fields_of(lines[2]);
  CHECK(excited[2] == "1");
  CHECK(std::fabs(std::stod(excited[6]) + 0.125) < 1e-6);
}

TEST_CASE("json output carries the same rows") {
  const auto r = run(
      "spectrum --dim 3 --states 1 --points 3000 --r-max 30 --format json");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.output);
  REQUIRE(doc.contains("rows"));
  REQUIRE(doc["rows"].size() == 1);
  const auto& row = doc["rows"][0];
  CHECK(row["D"] == 3);
  CHECK(row["family"] == "newtonian");
  CHECK(std::fabs(row["energy_hartree"].get<double>() + 0.5) < 1e-6);
  CHECK(row["extrapolated"] == true);
  CHECK(row["estimated_order"].is_number());
}

TEST_CASE("output is byte-identical across runs and worker counts") {
  const std::string args = "spectrum --dim 4 --l 1 --states 2 --points 2000 --r-max 60";
  const auto a = run(args, "DDATOM_WORKERS=1");
  const auto b = run(args, "DDATOM_WORKERS=4");
  const auto c = run(args, "DDATOM_WORKERS=4");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(b.output == c.output);

  const std::string scan = "scan-d --dims 6,10 --format json";
  const auto sa = run(scan, "DDATOM_WORKERS=1");
  const auto sb = run(scan, "DDATOM_WORKERS=3");
  CHECK(sa.exit_code == 0);
  CHECK(sa.output == sb.output);
}

TEST_CASE("scan-d table carries classifications and ratios") {
  const auto r = run("scan-d --dims 6,10");
  CHECK(r.exit_code == 0);
  const auto lines = lines_of(r.output);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kScanHeader);
  const auto row = fields_of(lines[1]);
  REQUIRE(row.size() == 7);
  CHECK(row[0] == "6");
  CHECK(row[1] == "Stable");
  CHECK(std::fabs(std::stod(row[5]) - 0.6) < 1e-6);
  CHECK(row[6] == "0.6");

  // Consistent family rows above the critical dimension have no numbers.
  const auto c = run("scan-d --dims 5 --family consistent --convention solid-angle");
  CHECK(c.exit_code == 0);
  const auto crow = fields_of(lines_of(c.output)[1] + " ");
  CHECK(crow[1] == "Collapse");
  CHECK(crow[2].empty());
}

TEST_CASE("potential tabulates the closed forms") {
  const auto r = run("potential --dim 3 --family consistent --r 2");
  const auto row = fields_of(lines_of(r.output)[1]);
  REQUIRE(row.size() == 7);
  CHECK(std::fabs(std::stod(row[6]) + 0.5) < 1e-12);

  const auto r4 = run(
      "potential --dim 4 --family consistent --convention solid-angle --r 1");
  CHECK(std::fabs(std::stod(fields_of(lines_of(r4.output)[1])[6]) + 0.5) <
        1e-12);
}

TEST_CASE("verify emits a json verdict") {
  const auto r = run("verify --case flux-d2 --case poisson");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.output);
  CHECK(doc["pass"] == true);
  REQUIRE(doc["cases"].size() == 2);
  CHECK(doc["cases"][0]["name"] == "flux-d2");
  CHECK(doc["cases"][0]["pass"] == true);
}

TEST_CASE("exit codes separate usage, physics, and success") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("spectrum --help").exit_code == 0);
  CHECK(run("--version").exit_code == 0);
  CHECK(run("spectrum --no-such-flag", "", true).exit_code == 64);
  CHECK(run("scan-d", "", true).exit_code == 64);  // --dims is required
  CHECK(run("potential --dim 3", "", true).exit_code == 64);
  CHECK(run("verify --case nonsense", "", true).exit_code == 64);

  // A supercritical channel is a physics refusal, not a usage error.
  const auto super = run(
      "spectrum --dim 5 --family consistent --convention solid-angle", "",
      true);
  CHECK(super.exit_code == 2);
  CHECK(super.output.find("unbounded") != std::string::npos);
}

TEST_CASE("config file fills omitted flags only") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "ddatom_cli_test.conf";
  {
    std::ofstream conf(path);
    conf << "# sample configuration\n"
         << "dim = 2\n"
         << "family = consistent\n"
         << "states = 2\n"
         << "points = 3000\n"
         << "r-max = 40\n";
  }
  const auto from_config = run("spectrum --config " + path.string());
  const auto from_flags = run(
      "spectrum --dim 2 --family consistent --states 2 --points 3000 "
      "--r-max 40");
  CHECK(from_config.exit_code == 0);
  CHECK(from_config.output == from_flags.output);

  // Explicit flags shadow config values.
  const auto overridden =
      run("spectrum --config " + path.string() + " --states 1");
  CHECK(lines_of(overridden.output).size() == 2);

  const auto missing = run("spectrum --config /no/such/file.conf", "", true);
  CHECK(missing.exit_code == 64);
  fs::remove(path);
}

TEST_CASE("--out writes the same bytes as stdout") {
  namespace fs = std::filesystem;
  const auto path = fs::temp_directory_path() / "ddatom_cli_test_out.csv";
  const std::string args = "potential --dim 2 --family consistent --r 0.5,1,2";
  const auto to_stdout = run(args);
  const auto to_file = run(args + " --out " + path.string());
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.output.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == to_stdout.output);
  fs::remove(path);
}
