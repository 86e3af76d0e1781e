// Copyright 2026 The decosim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <algorithm>

#include "decosim/digest.hpp"
#include "decosim/scenario.hpp"

using namespace decosim;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("decosim_test_" + tag);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<double>> parse_csv(const std::string& text,
                                           std::size_t* n_cols = nullptr) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      if (n_cols) {
        *n_cols = 1 + std::count(line.begin(), line.end(), ',');
      }
      header = false;
      continue;
    }
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

TEST_CASE("twostate scenario emits the pinned trajectory columns") {
  ScenarioConfig cfg = parse_config(R"({
    "kind": "twostate",
    "parameters": {"lambda_up": 2.0, "lambda_down": 0.5,
                   "T": 10.0, "n_samples": 20, "env_dim": 3}
  })");
  fs::path dir = fresh_dir("twostate");
  RunManifest manifest = run_scenario(cfg, dir);
  REQUIRE(manifest.outputs.size() == 2);

  std::string csv = slurp(dir / "trajectory.csv");
  std::size_t cols = 0;
  auto rows = parse_csv(csv, &cols);
  CHECK(cols == 7);
  CHECK(csv.rfind("t,re_r,im_r,avg_r_modulus,offdiag_l1_reduced,"
                  "exact_offdiag_V,estimate_offdiag_V\n",
                  0) == 0);
  REQUIRE(rows.size() == 21);
  // |r| = 1 on every row; the window average decays under 2/(gap rate * T).
  for (const auto& row : rows) {
    double modulus = std::hypot(row[1], row[2]);
    CHECK(modulus == doctest::Approx(1.0).epsilon(1e-12));
    if (row[0] > 0.0) {
      CHECK(row[3] <= std::min(1.0, 2.0 / (1.5 * row[0])) + 1e-12);
    }
  }

  auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("tau").get<double>() ==
        doctest::Approx(1.0 / 1.5).epsilon(1e-12));
}

TEST_CASE("thermal scenario fits the inverse-window law") {
  ScenarioConfig cfg = parse_config(R"({
    "kind": "thermal",
    "parameters": {"n_windows": 12, "window_min": 12.0, "window_max": 600.0}
  })");
  fs::path dir = fresh_dir("thermal");
  run_scenario(cfg, dir);
  auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.at("fit").at("r_squared").get<double>() > 0.9);
  CHECK(summary.at("dephase_projection").at("offdiag_l1").get<double>() ==
        0.0);
  auto rows = parse_csv(slurp(dir / "windows.csv"));
  REQUIRE(rows.size() == 12);
  // Longer windows end with less off-diagonal weight than the shortest.
  CHECK(rows.back()[1] < rows.front()[1]);
}

TEST_CASE("scenario reruns are byte-identical") {
  ScenarioConfig cfg = parse_config(R"({
    "kind": "localize",
    "parameters": {"n_sites": 8, "env_monitors": 2, "t_max": 1.0,
                   "n_samples": 5, "packet_kind": "random", "seed": 11}
  })");
  fs::path a = fresh_dir("det_a");
  fs::path b = fresh_dir("det_b");
  RunManifest ma = run_scenario(cfg, a);
  RunManifest mb = run_scenario(cfg, b);
  REQUIRE(ma.outputs.size() == mb.outputs.size());
  for (std::size_t k = 0; k < ma.outputs.size(); ++k) {
    CHECK(ma.outputs[k].path == mb.outputs[k].path);
    CHECK(ma.outputs[k].fnv1a64 == mb.outputs[k].fnv1a64);
    CHECK(slurp(a / ma.outputs[k].path) == slurp(b / mb.outputs[k].path));
  }
}

TEST_CASE("manifest digests match the files on disk") {
  ScenarioConfig cfg = parse_config(R"({
    "kind": "noncommutative",
    "parameters": {"n_samples": 10}
  })");
  fs::path dir = fresh_dir("manifest");
  RunManifest manifest = run_scenario(cfg, dir);
  auto mj = nlohmann::json::parse(slurp(dir / "manifest.json"));
  REQUIRE(mj.at("outputs").size() == manifest.outputs.size());
  for (const auto& rec : manifest.outputs) {
    std::string content = slurp(dir / rec.path);
    CHECK(fnv1a64_hex(content) == rec.fnv1a64);
  }
  CHECK(mj.at("config").at("kind") == "noncommutative");
}

TEST_CASE("the manifest's config echo reproduces the run byte for byte") {
  ScenarioConfig cfg = parse_config(R"({
    "kind": "twostate",
    "parameters": {"lambda_up": 2.0, "lambda_down": 0.5,
                   "n_samples": 12, "T": 8.0}
  })");
  fs::path first = fresh_dir("roundtrip_a");
  RunManifest ma = run_scenario(cfg, first);
  auto manifest = nlohmann::json::parse(slurp(first / "manifest.json"));

  ScenarioConfig replay = validate_config_json(manifest.at("config"));
  fs::path second = fresh_dir("roundtrip_b");
  RunManifest mb = run_scenario(replay, second);
  REQUIRE(ma.outputs.size() == mb.outputs.size());
  for (std::size_t k = 0; k < ma.outputs.size(); ++k) {
    CHECK(ma.outputs[k].fnv1a64 == mb.outputs[k].fnv1a64);
  }
}

TEST_CASE("degenerate actions abort the run before any file is written") {
  ScenarioConfig cfg = parse_config(R"({
    "kind": "twostate",
    "parameters": {"lambda_up": 1.0, "lambda_down": 1.0}
  })");
  fs::path dir = fresh_dir("degen");
  CHECK_THROWS_AS(run_scenario(cfg, dir), regime_error);
  CHECK_FALSE(fs::exists(dir / "trajectory.csv"));
  CHECK_FALSE(fs::exists(dir / "manifest.json"));
}

TEST_CASE("sweep writes one directory per member plus a joint manifest") {
  ScenarioConfig cfg = parse_config(R"({
    "kind": "sweep",
    "parameters": {
      "base": {"kind": "twostate",
               "parameters": {"lambda_up": 2.0, "lambda_down": 0.5,
                              "n_samples": 8, "T": 5.0}},
      "key": "T",
      "values": [5.0, 10.0, 20.0]
    }
  })");
  fs::path dir = fresh_dir("sweep");
  RunManifest manifest = run_scenario(cfg, dir);
  CHECK(fs::exists(dir / "run_000" / "trajectory.csv"));
  CHECK(fs::exists(dir / "run_001" / "trajectory.csv"));
  CHECK(fs::exists(dir / "run_002" / "trajectory.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(manifest.outputs.size() == 6);  // csv + summary per member
  for (const auto& rec : manifest.outputs) {
    CHECK(fnv1a64_hex(slurp(dir / rec.path)) == rec.fnv1a64);
  }
}

TEST_CASE("localize control run keeps a plane wave coherent") {
  ScenarioConfig cfg = parse_config(R"({
    "kind": "localize",
    "parameters": {"n_sites": 16, "hop": 0.05, "env_monitors": 0,
                   "coupling_mode": "potential", "coupling_strengths": [],
                   "monitor_splittings": [],
                   "packet_kind": "plane", "plane_k_index": 1,
                   "t_max": 3.0, "n_samples": 6}
  })");
  fs::path dir = fresh_dir("control");
  run_scenario(cfg, dir);
  auto rows = parse_csv(slurp(dir / "trajectory.csv"));
  for (const auto& row : rows) {
    CHECK(std::abs(row[2] - 16.0) < 1e-9);  // coherence_length column
    CHECK(std::abs(row[3] - 1.0) < 1e-9);   // purity column
  }
}
