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

#include "decosim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace decosim {

namespace {

using nlohmann::json;

enum class PType { number, integer, string, array, object };

struct ParamSpec {
  const char* key;
  PType type;
  bool required;
};

const std::vector<ParamSpec>& schema_for(ScenarioKind kind) {
  static const std::vector<ParamSpec> thermal{
      {"levels", PType::integer, false},
      {"energies", PType::array, false},
      {"initial_state", PType::string, false},
      {"n_windows", PType::integer, false},
      {"window_min", PType::number, false},
      {"window_max", PType::number, false},
      {"mc_window", PType::array, false},
      {"hbar", PType::number, false},
      {"seed", PType::integer, false},
  };
  static const std::vector<ParamSpec> twostate{
      {"eps_up", PType::number, false},
      {"eps_down", PType::number, false},
      {"lambda_up", PType::number, true},
      {"lambda_down", PType::number, true},
      {"v_offdiag", PType::number, false},
      {"env_dim", PType::integer, false},
      {"weight_up", PType::number, false},
      {"n_theta", PType::integer, false},
      {"T", PType::number, false},
      {"n_samples", PType::integer, false},
      {"gap_threshold", PType::number, false},
      {"hbar", PType::number, false},
      {"seed", PType::integer, false},
  };
  static const std::vector<ParamSpec> noncommutative{
      {"eps_up", PType::number, false},
      {"eps_down", PType::number, false},
      {"v_offdiag", PType::number, false},
      {"t_max", PType::number, false},
      {"n_samples", PType::integer, false},
      {"hbar", PType::number, false},
      {"seed", PType::integer, false},
  };
  static const std::vector<ParamSpec> localize{
      {"n_sites", PType::integer, false},
      {"hop", PType::number, false},
      {"mass_proxy", PType::number, false},
      {"potential_profile", PType::string, false},
      {"potential_amplitude", PType::number, false},
      {"potential_values", PType::array, false},
      {"env_monitors", PType::integer, false},
      {"coupling_mode", PType::string, false},
      {"coupling_strengths", PType::array, false},
      {"coupling_values", PType::array, false},
      {"monitor_splittings", PType::array, false},
      {"monitor_init", PType::string, false},
      {"packet_kind", PType::string, false},
      {"packet_center", PType::number, false},
      {"packet_sigma", PType::number, false},
      {"packet_k", PType::number, false},
      {"plane_k_index", PType::integer, false},
      {"t_max", PType::number, false},
      {"n_samples", PType::integer, false},
      {"resolution_T", PType::number, false},
      {"separation_factor", PType::number, false},
      {"hbar", PType::number, false},
      {"seed", PType::integer, false},
  };
  static const std::vector<ParamSpec> sweep{
      {"base", PType::object, true},
      {"key", PType::string, true},
      {"values", PType::array, true},
      {"max_concurrency", PType::integer, false},
  };
  switch (kind) {
    case ScenarioKind::thermal: return thermal;
    case ScenarioKind::twostate: return twostate;
    case ScenarioKind::noncommutative: return noncommutative;
    case ScenarioKind::localize: return localize;
    case ScenarioKind::sweep: return sweep;
  }
  throw std::logic_error("unreachable");
}

std::size_t levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string nearest_key(const std::string& key,
                        const std::vector<ParamSpec>& schema) {
  std::size_t best = static_cast<std::size_t>(-1);
  std::string name;
  for (const auto& spec : schema) {
    std::size_t d = levenshtein(key, spec.key);
    if (d < best) {
      best = d;
      name = spec.key;
    }
  }
  return name;
}

const char* type_name(PType t) {
  switch (t) {
    case PType::number: return "number";
    case PType::integer: return "integer";
    case PType::string: return "string";
    case PType::array: return "array";
    case PType::object: return "object";
  }
  return "?";
}

bool type_matches(PType t, const json& v) {
  switch (t) {
    case PType::number: return v.is_number();
    case PType::integer: return v.is_number_integer() || v.is_number_unsigned();
    case PType::string: return v.is_string();
    case PType::array: return v.is_array();
    case PType::object: return v.is_object();
  }
  return false;
}

void check_keys(const json& params, ScenarioKind kind) {
  const auto& schema = schema_for(kind);
  for (auto it = params.begin(); it != params.end(); ++it) {
    const ParamSpec* found = nullptr;
    for (const auto& spec : schema) {
      if (it.key() == spec.key) {
        found = &spec;
        break;
      }
    }
    if (!found) {
      throw config_error("unknown key \"" + it.key() + "\" for scenario " +
                         to_string(kind) + "; nearest valid key is \"" +
                         nearest_key(it.key(), schema) + "\"");
    }
    if (!type_matches(found->type, it.value())) {
      throw config_error("key \"" + it.key() + "\" must be a " +
                         type_name(found->type));
    }
  }
  for (const auto& spec : schema) {
    if (spec.required && !params.contains(spec.key)) {
      throw config_error(std::string("missing required key \"") + spec.key +
                         "\" for scenario " + to_string(kind));
    }
  }
}

void require_range(const json& params, const char* key, double lo, double hi) {
  double v = params.at(key).get<double>();
  if (!(v >= lo && v <= hi) || !std::isfinite(v)) {
    std::ostringstream os;
    os << "key \"" << key << "\" = " << v << " outside the valid range ["
       << lo << ", " << hi << "]";
    throw config_error(os.str());
  }
}

void require_positive(const json& params, const char* key) {
  double v = params.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw config_error(std::string("key \"") + key + "\" must be positive");
  }
}

std::vector<double> number_array(const json& arr, const char* key) {
  std::vector<double> out;
  for (const auto& v : arr) {
    if (!v.is_number()) {
      throw config_error(std::string("key \"") + key +
                         "\" must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

void fill_thermal(json& p) {
  if (!p.contains("levels")) p["levels"] = 6;
  require_range(p, "levels", 2, 64);
  int levels = p["levels"].get<int>();
  if (!p.contains("energies")) {
    if (levels == 6) {
      // Pair gaps mutually incommensurate, so the window-averaged
      // off-diagonal weight hugs its 1/T envelope cleanly.
      p["energies"] =
          json::array({0.0, 1.0931, 2.5787, 4.2760, 6.0547, 7.4112});
    } else {
      json e = json::array();
      for (int k = 0; k < levels; ++k) {
        e.push_back(static_cast<double>(k) + 0.07 * k * k);
      }
      p["energies"] = e;
    }
  }
  std::vector<double> e = number_array(p["energies"], "energies");
  if (static_cast<int>(e.size()) != levels) {
    throw config_error("key \"energies\" must list exactly `levels` values");
  }
  double span = *std::max_element(e.begin(), e.end()) -
                *std::min_element(e.begin(), e.end());
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      min_gap = std::min(min_gap, std::abs(e[i] - e[j]));
    }
  }
  if (!(min_gap > 1e-9 * std::max(span, 1.0))) {
    throw config_error("key \"energies\" must be nondegenerate");
  }
  if (!p.contains("initial_state")) p["initial_state"] = "uniform";
  std::string init = p["initial_state"].get<std::string>();
  if (init != "uniform" && init != "random") {
    throw config_error("key \"initial_state\" must be \"uniform\" or \"random\"");
  }
  if (init == "random" && !p.contains("seed")) {
    throw config_error("seed is mandatory for a randomized initial state");
  }
  if (!p.contains("n_windows")) p["n_windows"] = 50;
  require_range(p, "n_windows", 4, 400);
  if (!p.contains("window_min")) p["window_min"] = 10.0 / min_gap;
  require_positive(p, "window_min");
  if (!p.contains("window_max")) p["window_max"] = 1e4 / min_gap;
  require_positive(p, "window_max");
  if (!(p["window_max"].get<double>() > p["window_min"].get<double>())) {
    throw config_error("key \"window_max\" must exceed \"window_min\"");
  }
  if (!p.contains("mc_window")) {
    p["mc_window"] = json::array(
        {*std::min_element(e.begin(), e.end()),
         *std::max_element(e.begin(), e.end())});
  }
  std::vector<double> mc = number_array(p["mc_window"], "mc_window");
  if (mc.size() != 2 || !(mc[0] <= mc[1])) {
    throw config_error("key \"mc_window\" must be [lo, hi] with lo <= hi");
  }
  if (!p.contains("hbar")) p["hbar"] = 1.0;
  require_positive(p, "hbar");
}

void fill_twostate(json& p) {
  if (!p.contains("eps_up")) p["eps_up"] = 1.0;
  if (!p.contains("eps_down")) p["eps_down"] = -1.0;
  if (!p.contains("v_offdiag")) p["v_offdiag"] = 0.0;
  if (!p.contains("env_dim")) p["env_dim"] = 2;
  require_range(p, "env_dim", 1, 64);
  if (!p.contains("weight_up")) p["weight_up"] = 0.5;
  double w = p["weight_up"].get<double>();
  if (!(w > 0.0 && w < 1.0)) {
    throw config_error("key \"weight_up\" must lie strictly inside (0, 1)");
  }
  if (!p.contains("n_theta")) p["n_theta"] = 2001;
  require_range(p, "n_theta", 3, 100001);
  if (!p.contains("T")) p["T"] = 50.0;
  require_positive(p, "T");
  if (!p.contains("n_samples")) p["n_samples"] = 200;
  require_range(p, "n_samples", 2, 100000);
  if (!p.contains("gap_threshold")) p["gap_threshold"] = 10.0;
  require_positive(p, "gap_threshold");
  if (!p.contains("hbar")) p["hbar"] = 1.0;
  require_positive(p, "hbar");
}

void fill_noncommutative(json& p) {
  if (!p.contains("eps_up")) p["eps_up"] = 0.1;
  if (!p.contains("eps_down")) p["eps_down"] = -0.1;
  if (!p.contains("v_offdiag")) p["v_offdiag"] = 1.0;
  double de = p["eps_up"].get<double>() - p["eps_down"].get<double>();
  double v = p["v_offdiag"].get<double>();
  if (de == 0.0) {
    throw config_error("eps_up and eps_down must differ for this scenario");
  }
  if (v == 0.0) {
    throw config_error("key \"v_offdiag\" must be nonzero for this scenario");
  }
  if (!p.contains("hbar")) p["hbar"] = 1.0;
  require_positive(p, "hbar");
  double hbar = p["hbar"].get<double>();
  double validity = 0.1 * std::min(2.0 * hbar / std::abs(de),
                                   hbar / (2.0 * std::abs(v)));
  if (!p.contains("t_max")) p["t_max"] = 5.0 * validity;
  require_positive(p, "t_max");
  if (!p.contains("n_samples")) p["n_samples"] = 200;
  require_range(p, "n_samples", 2, 100000);
}

void fill_localize(json& p) {
  if (!p.contains("n_sites")) p["n_sites"] = 16;
  require_range(p, "n_sites", 4, 4096);
  auto n = p["n_sites"].get<std::size_t>();
  if (p.contains("hop") && p.contains("mass_proxy")) {
    throw config_error("give either \"hop\" or \"mass_proxy\", not both");
  }
  if (!p.contains("hop") && !p.contains("mass_proxy")) p["hop"] = 0.05;
  if (p.contains("hop")) require_positive(p, "hop");
  if (p.contains("mass_proxy")) require_positive(p, "mass_proxy");

  if (!p.contains("potential_profile")) p["potential_profile"] = "cosine";
  std::string prof = p["potential_profile"].get<std::string>();
  if (prof != "cosine" && prof != "linear" && prof != "double_well" &&
      prof != "custom") {
    throw config_error(
        "key \"potential_profile\" must be cosine, linear, double_well or custom");
  }
  if (!p.contains("potential_amplitude")) p["potential_amplitude"] = 1.0;
  if (prof == "custom") {
    if (!p.contains("potential_values")) {
      throw config_error("custom potential requires \"potential_values\"");
    }
    if (number_array(p["potential_values"], "potential_values").size() != n) {
      throw config_error("key \"potential_values\" must list n_sites values");
    }
  } else if (p.contains("potential_values")) {
    throw config_error(
        "key \"potential_values\" is only valid with the custom profile");
  }

  if (!p.contains("env_monitors")) p["env_monitors"] = 2;
  require_range(p, "env_monitors", 0, 8);
  auto monitors = p["env_monitors"].get<std::size_t>();
  double dim = static_cast<double>(n) * std::pow(2.0, static_cast<double>(monitors));
  if (dim > 4096.0) {
    throw config_error("n_sites * 2^env_monitors exceeds the 4096 cap");
  }

  if (!p.contains("coupling_mode")) p["coupling_mode"] = "quadrature";
  std::string mode = p["coupling_mode"].get<std::string>();
  if (mode != "potential" && mode != "quadrature" && mode != "custom") {
    throw config_error(
        "key \"coupling_mode\" must be potential, quadrature or custom");
  }
  if (mode == "quadrature" && monitors != 2) {
    throw config_error("quadrature coupling requires exactly 2 monitors");
  }
  if (mode == "custom") {
    if (!p.contains("coupling_values")) {
      throw config_error("custom coupling requires \"coupling_values\"");
    }
    const json& cv = p["coupling_values"];
    if (cv.size() != monitors) {
      throw config_error("key \"coupling_values\" must list one profile per monitor");
    }
    for (const auto& prof_arr : cv) {
      if (!prof_arr.is_array() ||
          number_array(prof_arr, "coupling_values").size() != n) {
        throw config_error("each coupling profile must list n_sites numbers");
      }
    }
  } else {
    if (p.contains("coupling_values")) {
      throw config_error(
          "key \"coupling_values\" is only valid with the custom mode");
    }
    if (!p.contains("coupling_strengths")) {
      json g = json::array();
      for (std::size_t e = 0; e < monitors; ++e) {
        g.push_back(mode == "quadrature" ? 0.5 : 0.25);
      }
      p["coupling_strengths"] = g;
    }
    if (number_array(p["coupling_strengths"], "coupling_strengths").size() !=
        monitors) {
      throw config_error(
          "key \"coupling_strengths\" must list one value per monitor");
    }
  }

  if (!p.contains("monitor_splittings")) {
    p["monitor_splittings"] = json::array();
    for (std::size_t e = 0; e < monitors; ++e) {
      p["monitor_splittings"].push_back(0.0);
    }
  }
  if (number_array(p["monitor_splittings"], "monitor_splittings").size() !=
      monitors) {
    throw config_error(
        "key \"monitor_splittings\" must list one value per monitor");
  }

  if (!p.contains("monitor_init")) p["monitor_init"] = "plus";
  std::string init = p["monitor_init"].get<std::string>();
  if (init != "plus" && init != "up") {
    throw config_error("key \"monitor_init\" must be \"plus\" or \"up\"");
  }

  if (!p.contains("packet_kind")) p["packet_kind"] = "gaussian";
  std::string packet = p["packet_kind"].get<std::string>();
  if (packet != "gaussian" && packet != "plane" && packet != "random") {
    throw config_error("key \"packet_kind\" must be gaussian, plane or random");
  }
  if (packet == "random" && !p.contains("seed")) {
    throw config_error("seed is mandatory for a randomized initial state");
  }
  if (!p.contains("packet_center")) p["packet_center"] = 4.0;
  if (!p.contains("packet_sigma")) p["packet_sigma"] = 3.0;
  require_positive(p, "packet_sigma");
  if (!p.contains("packet_k")) p["packet_k"] = 0.0;
  if (!p.contains("plane_k_index")) p["plane_k_index"] = 0;
  require_range(p, "plane_k_index", 0, static_cast<double>(n - 1));

  if (!p.contains("t_max")) p["t_max"] = 3.0;
  require_positive(p, "t_max");
  if (!p.contains("n_samples")) p["n_samples"] = 30;
  require_range(p, "n_samples", 2, 100000);
  if (!p.contains("resolution_T")) p["resolution_T"] = p["t_max"];
  require_positive(p, "resolution_T");
  if (!p.contains("separation_factor")) p["separation_factor"] = 10.0;
  require_positive(p, "separation_factor");
  if (!p.contains("hbar")) p["hbar"] = 1.0;
  require_positive(p, "hbar");
}

void fill_sweep(json& p) {
  if (!p.contains("max_concurrency")) p["max_concurrency"] = 4;
  require_range(p, "max_concurrency", 1, 64);
  if (!p["values"].is_array() || p["values"].empty()) {
    throw config_error("key \"values\" must be a non-empty array");
  }
  json base = p["base"];
  if (!base.contains("kind") || !base["kind"].is_string()) {
    throw config_error("sweep base must carry a \"kind\"");
  }
  if (base["kind"].get<std::string>() == "sweep") {
    throw config_error("sweeps cannot nest");
  }
  std::string key = p["key"].get<std::string>();
  // Validate every expanded configuration up front so a sweep never starts
  // with an invalid member.
  for (const auto& value : p["values"]) {
    json doc = base;
    if (!doc.contains("parameters") || !doc["parameters"].is_object()) {
      doc["parameters"] = json::object();
    }
    doc["parameters"][key] = value;
    validate_config_json(doc);
  }
}

}  // namespace

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::thermal: return "thermal";
    case ScenarioKind::twostate: return "twostate";
    case ScenarioKind::noncommutative: return "noncommutative";
    case ScenarioKind::localize: return "localize";
    case ScenarioKind::sweep: return "sweep";
  }
  return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  if (name == "thermal") return ScenarioKind::thermal;
  if (name == "twostate") return ScenarioKind::twostate;
  if (name == "noncommutative") return ScenarioKind::noncommutative;
  if (name == "localize") return ScenarioKind::localize;
  if (name == "sweep") return ScenarioKind::sweep;
  throw config_error("unknown scenario kind \"" + name + "\"");
}

ScenarioConfig validate_config_json(json doc) {
  if (!doc.is_object()) {
    throw config_error("config document must be a JSON object");
  }
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() != "kind" && it.key() != "schema_version" &&
        it.key() != "parameters") {
      throw config_error("unknown top-level key \"" + it.key() +
                         "\"; expected kind, schema_version or parameters");
    }
  }
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw config_error("config must carry a string \"kind\"");
  }
  ScenarioConfig cfg;
  cfg.kind = scenario_kind_from_string(doc["kind"].get<std::string>());
  if (doc.contains("schema_version")) {
    if (!doc["schema_version"].is_number_integer()) {
      throw config_error("key \"schema_version\" must be an integer");
    }
    cfg.schema_version = doc["schema_version"].get<int>();
  }
  if (cfg.schema_version != 1) {
    throw config_error("unsupported schema_version " +
                       std::to_string(cfg.schema_version));
  }
  cfg.parameters =
      doc.contains("parameters") ? doc["parameters"] : json::object();
  if (!cfg.parameters.is_object()) {
    throw config_error("key \"parameters\" must be an object");
  }
  check_keys(cfg.parameters, cfg.kind);
  switch (cfg.kind) {
    case ScenarioKind::thermal: fill_thermal(cfg.parameters); break;
    case ScenarioKind::twostate: fill_twostate(cfg.parameters); break;
    case ScenarioKind::noncommutative:
      fill_noncommutative(cfg.parameters);
      break;
    case ScenarioKind::localize: fill_localize(cfg.parameters); break;
    case ScenarioKind::sweep: fill_sweep(cfg.parameters); break;
  }
  return cfg;
}

ScenarioConfig parse_config(const std::string& text,
                            std::optional<std::uint64_t> seed_override) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error("config syntax error at byte " +
                       std::to_string(e.byte) + ": " + e.what());
  }
  if (seed_override && doc.is_object()) {
    if (!doc.contains("parameters") || !doc["parameters"].is_object()) {
      doc["parameters"] = json::object();
    }
    doc["parameters"]["seed"] = *seed_override;
  }
  return validate_config_json(std::move(doc));
}

ScenarioConfig parse_config_file(const std::string& path,
                                 std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw io_error("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), seed_override);
}

}  // namespace decosim
