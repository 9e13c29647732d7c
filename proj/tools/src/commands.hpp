// Copyright 2026 The minorkern Authors
//
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

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace minorkern::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct Outcome {
  int code = kExitPass;
  std::vector<std::string> summary;  // stdout
  std::optional<Json> diagnostic;    // stderr, with code != 0
};

Outcome cmd_density(const RunConfig& cfg);
Outcome cmd_kernel(const RunConfig& cfg);
Outcome cmd_correlation(const RunConfig& cfg);
Outcome cmd_sample(const RunConfig& cfg);
Outcome cmd_validate(const RunConfig& cfg);
Outcome cmd_scaling(const RunConfig& cfg);
Outcome cmd_lpp(const RunConfig& cfg);
Outcome cmd_limitcheck(const RunConfig& cfg);

Outcome dispatch(const RunConfig& cfg);

const std::vector<std::string>& suite_names();
const std::vector<std::string>& process_names();

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// {suite, pass, seed, checks: [{name, statistic, threshold, pass}]}.
Json run_suite(const RunConfig& cfg);

}  // namespace minorkern::cli
