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

#pragma once

#include <string>

#include "qscovert/config.hpp"

namespace qscovert {

const char* version();
const char* build_id();

/// Each command returns the full file contents it would write.
std::string cmd_fig2(const ExperimentConfig& cfg);
std::string cmd_rate_first_order(const ExperimentConfig& cfg);
std::string cmd_bounds(const ExperimentConfig& cfg);
std::string cmd_simulate(const ExperimentConfig& cfg);

std::string run_command(const ExperimentConfig& cfg);

}  // namespace qscovert
