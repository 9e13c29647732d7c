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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "minorkern/ensemble.hpp"
#include "minorkern/kernel.hpp"

namespace minorkern::cli {

using Json = nlohmann::ordered_json;

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;
  bool operator==(const GridSpec&) const = default;
  // min, min + step, ... up to max (inclusive within 1e-9 steps).
  std::vector<double> points() const;
};

// "min:max:step". Throws ArgumentError.
GridSpec parse_grid(const std::string& text);
// "s:y,s:y,...".
std::vector<SpeciesPoint> parse_points(const std::string& text);
// "0.5;0.9,0.3;1.2,0.6,0.2": species separated by ';'.
std::vector<std::vector<double>> parse_species_values(const std::string& text);

struct LatticeSpec {
  int n1 = 4;
  int n2 = 1;
  int p = 2;
  double a = 0.8;
  std::vector<double> a_s{1.0, 1.2};
  bool operator==(const LatticeSpec&) const = default;
};

struct RunConfig {
  std::string subcommand;
  EnsembleSpec ensemble;
  std::optional<int> N;
  std::vector<int> species;
  std::optional<GridSpec> grid;
  std::optional<std::uint64_t> seed;
  std::optional<long> draws;
  std::string out;
  int threads = 0;  // 0: all cores
  std::map<std::string, double> tolerances;

  std::vector<SpeciesPoint> points;
  std::string process = "gue-minor";
  std::optional<int> n;
  int depth = 1;
  std::vector<double> pi;
  std::vector<double> pihat;
  std::string suite;
  std::string regime = "soft";
  std::vector<int> N_list;
  std::vector<double> offsets;
  std::vector<double> positions;
  std::string mode = "bridge";
  double scale = 1.0;
  std::vector<double> L_list;
  LatticeSpec lattice;
  std::vector<std::vector<double>> x;

  bool operator==(const RunConfig&) const = default;

  double tol(const std::string& name, double fallback) const;
  int resolved_threads() const;
};

Json to_json(const RunConfig& cfg);
// Missing keys keep their defaults; unknown keys and wrong types throw
// ArgumentError.
RunConfig from_json(const Json& j);
RunConfig load_config(const std::string& path);
void save_config(const RunConfig& cfg, const std::string& path);

// Flag, then config, then MINORKERN_SEED, then 0. Throws ArgumentError for a
// malformed environment value.
std::uint64_t resolve_seed(const RunConfig& cfg);

}  // namespace minorkern::cli
