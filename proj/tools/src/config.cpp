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

#include "config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "minorkern/errors.hpp"
#include "minorkern/parallel.hpp"

namespace minorkern::cli {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError("bad number '" + s + "' in " + what);
  }
  if (used != s.size() || !std::isfinite(v)) throw ArgumentError("bad number '" + s + "' in " + what);
  return v;
}

int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ArgumentError("bad integer '" + s + "' in " + what);
  return static_cast<int>(v);
}

template <class T>
void read(const Json& j, const char* key, T& dst) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("config key '") + key + "': " + e.what());
  }
}

template <class T>
void read_opt(const Json& j, const char* key, std::optional<T>& dst) {
  if (!j.contains(key)) return;
  if (j.at(key).is_null()) {
    dst.reset();
    return;
  }
  T v{};
  read(j, key, v);
  dst = v;
}

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

std::vector<double> GridSpec::points() const {
  if (!(step > 0.0) || !std::isfinite(min) || !std::isfinite(max) || max < min)
    throw ArgumentError("grid needs min <= max and step > 0");
  const double span = (max - min) / step;
  if (span > 1e7) throw ArgumentError("grid has more than 1e7 points");
  const long count = static_cast<long>(std::floor(span + 1e-9)) + 1;
  std::vector<double> g(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) g[static_cast<std::size_t>(k)] = min + static_cast<double>(k) * step;
  return g;
}

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ArgumentError("grid must be min:max:step, got '" + text + "'");
  GridSpec g{to_double(parts[0], "grid"), to_double(parts[1], "grid"), to_double(parts[2], "grid")};
  g.points();
  return g;
}

std::vector<SpeciesPoint> parse_points(const std::string& text) {
  std::vector<SpeciesPoint> pts;
  for (const std::string& item : split(text, ',')) {
    const auto sy = split(item, ':');
    if (sy.size() != 2) throw ArgumentError("point must be species:y, got '" + item + "'");
    pts.push_back({to_int(sy[0], "points"), to_double(sy[1], "points")});
  }
  if (pts.empty()) throw ArgumentError("no points given");
  return pts;
}

std::vector<std::vector<double>> parse_species_values(const std::string& text) {
  std::vector<std::vector<double>> out;
  for (const std::string& block : split(text, ';')) {
    std::vector<double> v;
    for (const std::string& item : split(block, ',')) v.push_back(to_double(item, "species values"));
    out.push_back(v);
  }
  return out;
}

double RunConfig::tol(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

int RunConfig::resolved_threads() const { return threads > 0 ? threads : default_threads(); }

Json to_json(const RunConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["ensemble"] = {{"kind", to_string(c.ensemble.kind)}, {"a", c.ensemble.a}, {"b", c.ensemble.b}};
  j["N"] = opt(c.N);
  j["species"] = c.species;
  j["grid"] = c.grid ? Json{{"min", c.grid->min}, {"max", c.grid->max}, {"step", c.grid->step}}
                     : Json(nullptr);
  j["seed"] = opt(c.seed);
  j["draws"] = opt(c.draws);
  j["out"] = c.out;
  j["threads"] = c.threads;
  j["tolerances"] = Json::object();
  for (const auto& [k, v] : c.tolerances) j["tolerances"][k] = v;
  j["points"] = Json::array();
  for (const SpeciesPoint& p : c.points) j["points"].push_back({{"species", p.s}, {"y", p.y}});
  j["process"] = c.process;
  j["n"] = opt(c.n);
  j["depth"] = c.depth;
  j["pi"] = c.pi;
  j["pihat"] = c.pihat;
  j["suite"] = c.suite;
  j["regime"] = c.regime;
  j["N_list"] = c.N_list;
  j["offsets"] = c.offsets;
  j["positions"] = c.positions;
  j["mode"] = c.mode;
  j["scale"] = c.scale;
  j["L_list"] = c.L_list;
  j["lattice"] = {{"n1", c.lattice.n1}, {"n2", c.lattice.n2}, {"p", c.lattice.p},
                  {"a", c.lattice.a},   {"a_s", c.lattice.a_s}};
  j["x"] = c.x;
  return j;
}

RunConfig from_json(const Json& j) {
  if (!j.is_object()) throw ArgumentError("config must be a JSON object");
  static const char* known[] = {"subcommand", "ensemble", "N",      "species",   "grid",    "seed",
                                "draws",      "out",      "threads", "tolerances", "points", "process",
                                "n",          "depth",    "pi",     "pihat",     "suite",   "regime",
                                "N_list",     "offsets",  "positions", "mode",    "scale",   "L_list",
                                "lattice",    "x"};
  for (const auto& [k, v] : j.items()) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) throw ArgumentError("unknown config key '" + k + "'");
  }
  RunConfig c;
  read(j, "subcommand", c.subcommand);
  if (j.contains("ensemble") && !j.at("ensemble").is_null()) {
    const Json& e = j.at("ensemble");
    if (!e.is_object()) throw ArgumentError("config key 'ensemble' must be an object");
    std::string kind = to_string(c.ensemble.kind);
    read(e, "kind", kind);
    c.ensemble.kind = parse_ensemble_kind(kind);
    read(e, "a", c.ensemble.a);
    read(e, "b", c.ensemble.b);
  }
  read_opt(j, "N", c.N);
  read(j, "species", c.species);
  if (j.contains("grid") && !j.at("grid").is_null()) {
    GridSpec g;
    read(j.at("grid"), "min", g.min);
    read(j.at("grid"), "max", g.max);
    read(j.at("grid"), "step", g.step);
    g.points();
    c.grid = g;
  }
  read_opt(j, "seed", c.seed);
  read_opt(j, "draws", c.draws);
  read(j, "out", c.out);
  read(j, "threads", c.threads);
  read(j, "tolerances", c.tolerances);
  if (j.contains("points") && j.at("points").is_array())
    for (const Json& p : j.at("points")) {
      SpeciesPoint sp;
      read(p, "species", sp.s);
      read(p, "y", sp.y);
      c.points.push_back(sp);
    }
  read(j, "process", c.process);
  read_opt(j, "n", c.n);
  read(j, "depth", c.depth);
  read(j, "pi", c.pi);
  read(j, "pihat", c.pihat);
  read(j, "suite", c.suite);
  read(j, "regime", c.regime);
  read(j, "N_list", c.N_list);
  read(j, "offsets", c.offsets);
  read(j, "positions", c.positions);
  read(j, "mode", c.mode);
  read(j, "scale", c.scale);
  read(j, "L_list", c.L_list);
  if (j.contains("lattice") && !j.at("lattice").is_null()) {
    const Json& l = j.at("lattice");
    read(l, "n1", c.lattice.n1);
    read(l, "n2", c.lattice.n2);
    read(l, "p", c.lattice.p);
    read(l, "a", c.lattice.a);
    read(l, "a_s", c.lattice.a_s);
  }
  read(j, "x", c.x);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return from_json(j);
}

void save_config(const RunConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write config '" + path + "'");
  out << to_json(cfg).dump(2) << '\n';
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  const char* env = std::getenv("MINORKERN_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || *env == '-') throw ArgumentError("MINORKERN_SEED must be a non-negative integer");
  return static_cast<std::uint64_t>(v);
}

}  // namespace minorkern::cli
