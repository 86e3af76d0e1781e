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

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "decosim/config.hpp"
#include "decosim/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRegime = 3;
constexpr int kExitIo = 4;

struct SubcommandArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed_value = 0;
  CLI::Option* seed_opt = nullptr;
  bool quiet = false;

  std::optional<std::uint64_t> seed() const {
    if (seed_opt && seed_opt->count() > 0) return seed_value;
    return std::nullopt;
  }
};

void add_common_options(CLI::App* sub, SubcommandArgs& args,
                        bool with_output) {
  sub->add_option("--config", args.config_path, "Scenario config file (JSON)")
      ->required();
  if (with_output) {
    sub->add_option("--out", args.out_dir, "Output directory");
    args.seed_opt =
        sub->add_option("--seed", args.seed_value, "Override the config seed");
  }
  sub->add_flag("--quiet", args.quiet, "Suppress progress output");
}

int run(decosim::ScenarioKind kind, const SubcommandArgs& args,
        bool validate_only) {
  decosim::ScenarioConfig cfg =
      decosim::parse_config_file(args.config_path, args.seed());
  if (cfg.kind != kind) {
    throw decosim::config_error(
        std::string("config kind \"") + decosim::to_string(cfg.kind) +
        "\" does not match the subcommand \"" + decosim::to_string(kind) +
        "\"");
  }
  if (validate_only) {
    if (!args.quiet) std::cout << "OK\n";
    return kExitOk;
  }
  decosim::RunManifest manifest = decosim::run_scenario(cfg, args.out_dir);
  if (!args.quiet) {
    std::cout << "wrote " << manifest.manifest_path.string() << "\n";
    for (const auto& rec : manifest.outputs) {
      std::cout << "  " << rec.path << "  fnv1a64:" << rec.fnv1a64 << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "decosim: decoherence dynamics via interaction-energy phase "
      "accumulation"};
  app.require_subcommand(1);

  struct Entry {
    decosim::ScenarioKind kind;
    const char* name;
    const char* help;
  };
  const Entry entries[] = {
      {decosim::ScenarioKind::thermal, "thermal",
       "Window-averaged density matrix of a nondegenerate level system"},
      {decosim::ScenarioKind::twostate, "twostate",
       "Two-state monitored system: coherence factor and pointer weights"},
      {decosim::ScenarioKind::noncommutative, "noncommutative",
       "Exact vs first-order off-diagonal growth under a non-commuting field"},
      {decosim::ScenarioKind::localize, "localize",
       "Monitored lattice particle: localization metrics and timescales"},
      {decosim::ScenarioKind::sweep, "sweep",
       "Fan out a parameter sweep of another scenario"},
  };

  SubcommandArgs args[6];
  int selected = -1;
  bool validate_only = false;
  for (int k = 0; k < 5; ++k) {
    CLI::App* sub = app.add_subcommand(entries[k].name, entries[k].help);
    add_common_options(sub, args[k], true);
    sub->callback([&selected, k] { selected = k; });
  }
  CLI::App* val = app.add_subcommand(
      "validate", "Parse and validate a config without running it");
  add_common_options(val, args[5], false);
  val->callback([&selected, &validate_only] {
    selected = 5;
    validate_only = true;
  });

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_only) {
      decosim::ScenarioConfig cfg =
          decosim::parse_config_file(args[5].config_path, args[5].seed());
      (void)cfg;
      if (!args[5].quiet) std::cout << "OK\n";
      return kExitOk;
    }
    return run(entries[selected].kind, args[selected], false);
  } catch (const decosim::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const decosim::regime_error& e) {
    std::cerr << "numeric-regime error: " << e.what() << "\n";
    return kExitRegime;
  } catch (const decosim::io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
