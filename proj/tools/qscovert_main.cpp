// Copyright 2026 The qscovert Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qscovert/commands.hpp"

namespace {

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  std::uint64_t trials = 0;
  std::string out;
  std::string format;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file")->required();
  sub->add_option("--seed", f.seed, "master seed (overrides config)");
  sub->add_option("--workers", f.workers, "worker threads (output does not depend on it)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--trials", f.trials, "override every trial count in the config")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", f.out, "output path (default: stdout)");
  sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-blocklength covert communication benchmarks for quasi-static MIMO fading"};
  app.set_version_flag("--version", std::string(qscovert::version()) + " (" + qscovert::build_id() + ")");
  app.require_subcommand(1);
  Flags flags;
  for (const auto& [name, help] : {std::pair{"fig2", "spectral-norm ECDF and tail thresholds"},
                                  std::pair{"rate-first-order", "first-order covert rate grid"},
                                  std::pair{"bounds", "achievability and converse bounds over n"},
                                  std::pair{"simulate", "end-to-end link and warden simulation"}}) {
    add_flags(app.add_subcommand(name, help), flags);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommands().front();
  qscovert::RunOverrides ov;
  if (sub->count("--seed")) ov.seed = flags.seed;
  if (sub->count("--workers")) ov.workers = flags.workers;
  if (sub->count("--trials")) ov.trials = flags.trials;
  if (sub->count("--format")) ov.format = flags.format;
  if (sub->count("--out")) ov.out = flags.out;

  try {
    const auto cfg = qscovert::load_config_file(command, flags.config, ov);
    const std::string output = qscovert::run_command(cfg);
    if (cfg.out.empty()) {
      std::cout << output;
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!out || !(out << output)) {
        std::cerr << "error: cannot write '" << cfg.out << "'\n";
        return kExitIo;
      }
    }
  } catch (const qscovert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == qscovert::ErrorKind::kConfig ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return 0;
}
