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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "minorkern/errors.hpp"
#include "minorkern/kernel.hpp"
#include "minorkern/parallel.hpp"
#include "minorkern/rsklab.hpp"
#include "minorkern/samplers.hpp"
#include "minorkern/scaling.hpp"
#include "minorkern/validate.hpp"
#include "output.hpp"

namespace minorkern::cli {

namespace {

int require_N(const RunConfig& c) {
  if (!c.N) throw ArgumentError("--N is required");
  return *c.N;
}

std::string ensemble_label(const EnsembleSpec& e) {
  std::ostringstream o;
  o << to_string(e.kind);
  if (e.kind != EnsembleKind::Gaussian) o << "(a=" << format_double(e.a);
  if (e.kind == EnsembleKind::Jacobi) o << ", b=" << format_double(e.b);
  if (e.kind != EnsembleKind::Gaussian) o << ")";
  return o.str();
}

void ensemble_meta(CsvWriter& w, const EnsembleSpec& e) {
  w.meta("ensemble", to_string(e.kind));
  w.meta("a", format_double(e.a));
  w.meta("b", format_double(e.b));
}

Json ensemble_json(const EnsembleSpec& e) {
  return {{"kind", to_string(e.kind)}, {"a", e.a}, {"b", e.b}};
}

std::string points_label(const std::vector<SpeciesPoint>& pts) {
  std::string s;
  for (const SpeciesPoint& p : pts) {
    if (!s.empty()) s += ' ';
    s += std::to_string(p.s) + ":" + format_double(p.y);
  }
  return s;
}

std::vector<SpeciesPoint> require_points(const RunConfig& c, int N) {
  if (c.points.empty()) throw ArgumentError("--points is required");
  for (const SpeciesPoint& p : c.points)
    if (p.s < 1 || p.s > N) throw ArgumentError("point species " + std::to_string(p.s) + " outside 1..N");
  return c.points;
}

}  // namespace

Outcome cmd_density(const RunConfig& c) {
  const ProcessSpec proc{c.ensemble, require_N(c)};
  proc.validate();
  std::vector<int> species = c.species;
  if (species.empty())
    for (int s = 1; s <= proc.N; ++s) species.push_back(s);
  for (int s : species)
    if (s < 1 || s > proc.N) throw ArgumentError("species " + std::to_string(s) + " outside 1..N");
  std::vector<double> grid;
  if (c.grid) {
    grid = c.grid->points();
  } else {
    double lo, hi;
    density_range(proc, lo, hi);
    grid = GridSpec{lo, hi, (hi - lo) / 400.0}.points();
  }
  const std::string path = out_path(c, "density.csv");
  CsvWriter w(path);
  w.meta("command", "density");
  ensemble_meta(w, proc.ensemble);
  w.meta("N", std::to_string(proc.N));
  w.header({"species", "y", "rho1"});
  Outcome o;
  for (int s : species) {
    const std::vector<double> v = density(proc, s, grid, c.resolved_threads());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!std::isfinite(v[i]))
        throw NumericError("density is not finite at species " + std::to_string(s) + ", y = " + format_double(grid[i]));
      w.cell(s).cell(grid[i]).cell(v[i]).end_row();
      if (grid.size() * species.size() <= 4)
        o.summary.push_back("rho1(" + std::to_string(s) + ", " + format_double(grid[i]) + ") = " + format_double(v[i]));
    }
  }
  w.close();
  o.summary.insert(o.summary.begin(), "density: " + ensemble_label(proc.ensemble) + " N=" + std::to_string(proc.N) +
                                          ", " + std::to_string(w.rows()) + " rows -> " + path);
  return o;
}

Outcome cmd_kernel(const RunConfig& c) {
  const ProcessSpec proc{c.ensemble, require_N(c)};
  proc.validate();
  const std::vector<SpeciesPoint> pts = require_points(c, proc.N);
  const std::string path = out_path(c, "kernel.csv");
  CsvWriter w(path);
  w.meta("command", "kernel");
  ensemble_meta(w, proc.ensemble);
  w.meta("N", std::to_string(proc.N));
  w.meta("kernel", "K in the phi/Psi/Phi gauge");
  w.meta("direct", "orthonormal-function form");
  w.header({"row_species", "row_y", "col_species", "col_y", "kernel", "direct"});
  const std::size_t n = pts.size();
  std::vector<double> k(n * n), d(n * n);
  parallel_for(n * n, c.resolved_threads(), [&](std::size_t i, int) {
    k[i] = kernel_K(proc, pts[i / n], pts[i % n]).value;
    d[i] = kernel_direct(proc, pts[i / n], pts[i % n]).value;
  });
  for (std::size_t i = 0; i < n * n; ++i)
    w.cell(pts[i / n].s).cell(pts[i / n].y).cell(pts[i % n].s).cell(pts[i % n].y).cell(k[i]).cell(d[i]).end_row();
  w.close();
  Outcome o;
  o.summary.push_back("kernel: " + ensemble_label(proc.ensemble) + " N=" + std::to_string(proc.N) + ", " +
                      std::to_string(w.rows()) + " entries -> " + path);
  return o;
}

Outcome cmd_correlation(const RunConfig& c) {
  const ProcessSpec proc{c.ensemble, require_N(c)};
  proc.validate();
  const std::vector<SpeciesPoint> pts = require_points(c, proc.N);
  const double rho = correlation(proc, pts);
  if (!std::isfinite(rho)) throw NumericError("correlation is not finite");
  const std::string path = out_path(c, "correlation.csv");
  CsvWriter w(path);
  w.meta("command", "correlation");
  ensemble_meta(w, proc.ensemble);
  w.meta("N", std::to_string(proc.N));
  w.meta("points", points_label(pts));
  w.header({"r", "correlation"});
  w.cell(static_cast<long>(pts.size())).cell(rho).end_row();
  w.close();
  Outcome o;
  o.summary.push_back("correlation: rho_" + std::to_string(pts.size()) + "(" + points_label(pts) +
                      ") = " + format_double(rho) + " -> " + path);
  return o;
}

const std::vector<std::string>& process_names() {
  static const std::vector<std::string> names{"gue-minor", "lue-chain", "projection", "process", "wishart"};
  return names;
}

Outcome cmd_sample(const RunConfig& c) {
  const std::uint64_t seed = resolve_seed(c);
  const long draws = c.draws.value_or(1000);
  if (draws < 1) throw ArgumentError("--draws must be >= 1");
  std::function<InterlacedChain(std::uint64_t)> draw;
  std::string shape;
  if (c.process == "gue-minor") {
    const int N = require_N(c);
    if (N < 1) throw ArgumentError("--N must be >= 1");
    draw = [N, seed](std::uint64_t k) { return sample_gue_minor_chain(N, seed, k); };
    shape = "species 1.." + std::to_string(N);
  } else if (c.process == "lue-chain") {
    const int N = require_N(c);
    const int n = c.n.value_or(N);
    draw = [N, n, seed](std::uint64_t k) { return sample_lue_chain(N, n, seed, k); };
    shape = "species 1.." + std::to_string(n) + " in dimension " + std::to_string(N);
  } else if (c.process == "projection") {
    if (!c.n && !c.N) throw ArgumentError("--n (top species size) is required");
    const int n = c.n ? *c.n : *c.N;
    const int p = c.depth;
    const EnsembleSpec e = c.ensemble;
    draw = [e, n, p, seed](std::uint64_t k) { return sample_projection_chain(e, n, p, seed, k); };
    shape = "species " + std::to_string(n - p) + ".." + std::to_string(n);
  } else if (c.process == "process") {
    const int N = require_N(c);
    const EnsembleSpec e = c.ensemble;
    draw = [e, N, seed](std::uint64_t k) { return sample_process_chain(e, N, seed, k); };
    shape = "species 1.." + std::to_string(N);
  } else if (c.process == "wishart") {
    const int N = require_N(c);
    const std::vector<double> pi = c.pi.empty() ? std::vector<double>(static_cast<std::size_t>(std::max(N, 0)), 1.0) : c.pi;
    const std::vector<double> ph = c.pihat.empty() ? std::vector<double>(static_cast<std::size_t>(std::max(N, 0)), 0.0) : c.pihat;
    draw = [N, pi, ph, seed](std::uint64_t k) { return sample_wishart_chain_inhomogeneous(N, pi, ph, seed, k); };
    shape = "species 1.." + std::to_string(N);
  } else {
    throw ArgumentError("unknown process '" + c.process + "'");
  }
  draw(0);  // parameter errors surface before any output is written

  const std::string path = out_path(c, "chains.csv");
  CsvWriter w(path);
  w.meta("command", "sample");
  w.meta("process", c.process);
  ensemble_meta(w, c.ensemble);
  w.meta("seed", std::to_string(seed));
  w.meta("draws", std::to_string(draws));
  w.meta("index", "ascending within species");
  w.header({"draw_id", "species", "index", "value"});
  long violations = 0, notes = 0;
  const long block = 8192;
  std::vector<InterlacedChain> chains;
  for (long start = 0; start < draws; start += block) {
    const long count = std::min(block, draws - start);
    chains.assign(static_cast<std::size_t>(count), {});
    parallel_for(static_cast<std::size_t>(count), c.resolved_threads(),
                 [&](std::size_t i, int) { chains[i] = draw(static_cast<std::uint64_t>(start) + i); });
    for (long i = 0; i < count; ++i) {
      const InterlacedChain& ch = chains[static_cast<std::size_t>(i)];
      if (!ch.interlaced()) ++violations;
      notes += static_cast<long>(ch.notes.size());
      for (const auto& [s, v] : ch.species)
        for (std::size_t j = 0; j < v.size(); ++j)
          w.cell(start + i).cell(s).cell(static_cast<long>(j + 1)).cell(v[j]).end_row();
    }
  }
  w.close();
  Outcome o;
  o.summary.push_back("sample: " + c.process + " " + shape + ", " + std::to_string(draws) + " draws, seed " +
                      std::to_string(seed) + ", " + std::to_string(w.rows()) + " rows -> " + path);
  if (notes > 0) o.summary.push_back("sample: " + std::to_string(notes) + " merged-pole notes");
  if (violations > 0) {
    o.code = kExitFail;
    o.diagnostic = Json{{"error", "interlacing"}, {"violations", violations}, {"draws", draws}, {"seed", seed}};
  }
  return o;
}

Outcome cmd_validate(const RunConfig& c) {
  const Json report = run_suite(c);
  const std::string path = out_path(c, "validate-" + c.suite + ".json");
  write_json(report, path);
  Outcome o;
  long passed = 0, total = 0;
  for (const Json& ch : report.at("checks")) {
    ++total;
    if (ch.at("pass").get<bool>()) ++passed;
  }
  const bool pass = report.at("pass").get<bool>();
  o.summary.push_back("validate " + c.suite + ": " + (pass ? "PASS" : "FAIL") + " (" + std::to_string(passed) +
                      "/" + std::to_string(total) + " checks) -> " + path);
  if (!pass) {
    o.code = kExitFail;
    Json failed = Json::array();
    for (const Json& ch : report.at("checks"))
      if (!ch.at("pass").get<bool>()) failed.push_back(ch);
    o.diagnostic = Json{{"error", "validation"}, {"suite", c.suite}, {"failed", failed}};
  }
  return o;
}

Outcome cmd_scaling(const RunConfig& c) {
  LimitQuery q;
  q.regime = parse_regime(c.regime);
  q.ensemble = c.ensemble;
  q.positions = c.positions.empty() ? std::vector<double>{0.0} : c.positions;
  q.offsets = c.offsets.empty() ? std::vector<double>(q.positions.size(), 0.0) : c.offsets;
  if (q.offsets.size() != q.positions.size()) throw ArgumentError("--offsets and --positions differ in length");
  const std::vector<int> N_list = c.N_list.empty() ? std::vector<int>{50, 100, 200} : c.N_list;
  q.N = N_list.back();
  const ConvergenceReport r = convergence_report(q, N_list, c.resolved_threads());
  for (double v : r.finite)
    if (!std::isfinite(v)) throw NumericError("scaled finite-N value is not finite");

  Json j;
  j["regime"] = to_string(r.regime);
  j["ensemble"] = ensemble_json(r.ensemble);
  j["N_list"] = r.N_list;
  j["points"] = Json::array();
  for (std::size_t i = 0; i < r.positions.size(); ++i)
    j["points"].push_back({{"offset", r.offsets[i]}, {"position", r.positions[i]}});
  j["errors"] = r.errors;
  j["order_estimate"] = r.order_estimate;
  j["statistic"] = r.positions.size() == 1 ? "diagonal" : "determinant";
  j["limit"] = r.limit;
  j["finite"] = r.finite;
  j["monotone"] = r.monotone;
  j["converging"] = r.converging;
  const std::string path = out_path(c, "scaling.json");
  write_json(j, path);
  const std::string csv = sibling(path, ".csv");
  CsvWriter w(csv);
  w.meta("command", "scaling");
  w.meta("regime", to_string(r.regime));
  ensemble_meta(w, r.ensemble);
  w.meta("statistic", j["statistic"].get<std::string>());
  w.meta("order_estimate", format_double(r.order_estimate));
  w.header({"N", "finite", "limit", "error"});
  for (std::size_t i = 0; i < r.N_list.size(); ++i)
    w.cell(r.N_list[i]).cell(r.finite[i]).cell(r.limit).cell(r.errors[i]).end_row();
  w.close();
  Outcome o;
  o.summary.push_back("scaling " + to_string(r.regime) + " " + ensemble_label(r.ensemble) + ": limit " +
                      format_double(r.limit) + ", final error " + format_double(r.errors.back()) + ", order " +
                      format_double(r.order_estimate) + (r.converging ? " (converging)" : " (not converging)"));
  o.summary.push_back("scaling: -> " + path + ", " + csv);
  return o;
}

Outcome cmd_lpp(const RunConfig& c) {
  const std::uint64_t seed = resolve_seed(c);
  const long draws = c.draws.value_or(100000);
  const int n = c.n ? *c.n : c.N.value_or(4);
  Json j;
  if (c.mode == "bridge") {
    const BridgeReport r = lpp_eigenvalue_bridge_test(n, draws, seed, c.scale, c.resolved_threads());
    j = {{"statistic", r.ks.statistic}, {"critical_value", r.ks.critical_value}, {"draws", r.draws},
         {"seed", r.seed},              {"pass", r.ks.pass},                     {"mode", c.mode},
         {"n", n},                      {"scale", c.scale}};
  } else if (c.mode == "wishart") {
    const WishartReport r = wishart_homogeneous_test(n, draws, seed, c.scale, c.resolved_threads());
    j = {{"statistic", r.ks.statistic}, {"critical_value", r.ks.critical_value}, {"draws", r.draws},
         {"seed", r.seed},              {"pass", r.ks.pass},                     {"mode", c.mode},
         {"n", n},                      {"scale", c.scale}};
  } else if (c.mode == "rsk") {
    if (draws < 1) throw ArgumentError("--draws must be >= 1");
    LatticeConfig lc;
    lc.n1 = n;
    lc.n2 = n;
    lc.p = c.depth;
    lc.model = WeightModel::Geometric;
    lc.z = 0.6;
    lc.t = 0.9;
    lc.alpha.assign(static_cast<std::size_t>(std::max(lc.p, 0)), 0.5);
    lc.validate();
    std::vector<char> bad(static_cast<std::size_t>(draws), 0);
    parallel_for(static_cast<std::size_t>(draws), c.resolved_threads(), [&](std::size_t k, int) {
      const LatticeGrid g = sample_lattice(lc, seed, k);
      const ShapeSequence seq = rsk_shape_sequence(g, lc.n2, lc.p);
      bool ok = seq.interlaced();
      for (int s = 0; s <= lc.p && ok; ++s) {
        const long first = seq.shapes[s].empty() ? 0 : seq.shapes[s][0];
        ok = static_cast<double>(first) == last_passage(g, lc.n1, lc.n2 + s);
      }
      bad[k] = ok ? 0 : 1;
    });
    const long failures = std::count(bad.begin(), bad.end(), 1);
    j = {{"statistic", failures}, {"critical_value", 0}, {"draws", draws}, {"seed", seed},
         {"pass", failures == 0}, {"mode", c.mode},      {"n", n},         {"depth", lc.p}};
  } else {
    throw ArgumentError("unknown lpp mode '" + c.mode + "' (bridge, wishart, rsk)");
  }
  const std::string path = out_path(c, "lpp-" + c.mode + ".json");
  write_json(j, path);
  Outcome o;
  const bool pass = j.at("pass").get<bool>();
  o.summary.push_back("lpp " + c.mode + ": statistic " + format_double(j.at("statistic").get<double>()) +
                      ", critical " + format_double(j.at("critical_value").get<double>()) + ", " +
                      (pass ? "PASS" : "FAIL") + " -> " + path);
  if (!pass) {
    o.code = kExitFail;
    o.diagnostic = Json{{"error", "validation"}, {"report", j}};
  }
  return o;
}

Outcome cmd_limitcheck(const RunConfig& c) {
  const JacobiLimitParams prm{c.lattice.n1, c.lattice.n2, c.lattice.p, c.lattice.a, c.lattice.a_s};
  prm.validate();
  SpeciesValues x = c.x;
  if (x.empty()) {
    if (prm.n2 == 1 && prm.p == 2)
      x = {{0.5}, {0.9, 0.3}, {1.2, 0.6, 0.2}};
    else
      throw ArgumentError("--x is required unless n2 = 1 and p = 2");
  }
  const std::vector<double> L = c.L_list.empty() ? std::vector<double>{50, 100, 200} : c.L_list;
  const DiscreteLimitReport r = discrete_limit_study(prm, x, L, c.tol("ratio", 0.3));
  Json j;
  j["L_list"] = r.L;
  j["scaled"] = r.scaled;
  j["limit"] = r.limit;
  j["errors"] = r.errors;
  j["ratios"] = r.ratios;
  j["ratio_tolerance"] = c.tol("ratio", 0.3);
  j["pass"] = r.pass;
  const std::string path = out_path(c, "limitcheck.json");
  write_json(j, path);
  const std::string csv = sibling(path, ".csv");
  CsvWriter w(csv);
  w.meta("command", "limitcheck");
  w.meta("limit", format_double(r.limit));
  w.header({"L", "scaled", "error", "ratio"});
  for (std::size_t i = 0; i < r.L.size(); ++i) {
    w.cell(r.L[i]).cell(r.scaled[i]).cell(r.errors[i]);
    if (i == 0)
      w.cell(std::string());
    else
      w.cell(r.ratios[i - 1]);
    w.end_row();
  }
  w.close();
  Outcome o;
  std::string ratios;
  for (double q : r.ratios) ratios += (ratios.empty() ? "" : ", ") + format_double(q);
  o.summary.push_back("limitcheck: error ratios " + ratios + ", " + (r.pass ? "PASS" : "FAIL") + " -> " + path + ", " + csv);
  if (!r.pass) {
    o.code = kExitFail;
    o.diagnostic = Json{{"error", "validation"}, {"report", j}};
  }
  return o;
}

Outcome dispatch(const RunConfig& c) {
  if (c.subcommand == "density") return cmd_density(c);
  if (c.subcommand == "kernel") return cmd_kernel(c);
  if (c.subcommand == "correlation") return cmd_correlation(c);
  if (c.subcommand == "sample") return cmd_sample(c);
  if (c.subcommand == "validate") return cmd_validate(c);
  if (c.subcommand == "scaling") return cmd_scaling(c);
  if (c.subcommand == "lpp") return cmd_lpp(c);
  if (c.subcommand == "limitcheck") return cmd_limitcheck(c);
  throw ArgumentError("unknown subcommand '" + c.subcommand + "'");
}

}  // namespace minorkern::cli
