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

#include "app.hpp"

#include <functional>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "minorkern/errors.hpp"

namespace minorkern::cli {

namespace {

using Op = std::function<void(RunConfig&)>;

// Flag values are applied after the config file is read, in command-line order.
template <class T, class Set>
CLI::Option* flag(CLI::App* sub, std::vector<Op>& ops, const std::string& name, Set set,
                  const std::string& desc) {
  return sub->add_option_function<T>(
      name, [&ops, set](const T& v) { ops.push_back([set, v](RunConfig& c) { set(c, v); }); }, desc);
}

void add_common(CLI::App* sub, std::vector<Op>& ops, std::string& config_path, std::string& save_path) {
  sub->add_option("--config", config_path, "JSON config file; flags override its values");
  sub->add_option("--save-config", save_path, "write the resolved config to this file");
  flag<std::string>(sub, ops, "--ensemble", [](RunConfig& c, const std::string& v) { c.ensemble.kind = parse_ensemble_kind(v); },
                    "gaussian, laguerre or jacobi")
      ->check(CLI::IsMember({"gaussian", "laguerre", "jacobi"}));
  flag<double>(sub, ops, "--a", [](RunConfig& c, double v) { c.ensemble.a = v; }, "ensemble parameter a");
  flag<double>(sub, ops, "--b", [](RunConfig& c, double v) { c.ensemble.b = v; }, "ensemble parameter b (Jacobi)");
  flag<int>(sub, ops, "--N", [](RunConfig& c, int v) { c.N = v; }, "matrix size / number of species");
  flag<std::uint64_t>(sub, ops, "--seed", [](RunConfig& c, std::uint64_t v) { c.seed = v; },
                      "random seed (fallback: MINORKERN_SEED, then 0)");
  flag<long>(sub, ops, "--draws", [](RunConfig& c, long v) { c.draws = v; }, "number of random draws");
  flag<std::string>(sub, ops, "--out", [](RunConfig& c, const std::string& v) { c.out = v; }, "output file");
  flag<int>(sub, ops, "--threads", [](RunConfig& c, int v) { c.threads = v; }, "worker threads (0: all cores)")
      ->check(CLI::NonNegativeNumber);
  flag<std::vector<std::string>>(
      sub, ops, "--tol",
      [](RunConfig& c, const std::vector<std::string>& v) {
        for (const std::string& item : v) {
          const auto eq = item.find('=');
          if (eq == std::string::npos || eq == 0) throw ArgumentError("--tol expects name=value, got '" + item + "'");
          std::size_t used = 0;
          double x;
          try {
            x = std::stod(item.substr(eq + 1), &used);
          } catch (const std::exception&) {
            throw ArgumentError("bad tolerance '" + item + "'");
          }
          if (used != item.size() - eq - 1 || !(x >= 0.0)) throw ArgumentError("bad tolerance '" + item + "'");
          c.tolerances[item.substr(0, eq)] = x;
        }
      },
      "tolerance override name=value (repeatable)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kernels, samplers and validation for interlaced eigenvalue processes.", "minorkern"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");
  std::vector<Op> ops;
  std::string config_path, save_path;

  auto* density = app.add_subcommand("density", "one-point density rho1 of each species on a grid (CSV)");
  auto* kernel = app.add_subcommand("kernel", "kernel entries for all pairs of --points (CSV)");
  auto* corr = app.add_subcommand("correlation", "r-point correlation at --points (CSV)");
  auto* sample = app.add_subcommand("sample", "draw interlaced chains (CSV: draw_id,species,index,value)");
  auto* validate = app.add_subcommand("validate", "run a validation suite (JSON report)");
  auto* scaling = app.add_subcommand("scaling", "finite-N versus limit kernel convergence (JSON + CSV)");
  auto* lpp = app.add_subcommand("lpp", "last passage percolation experiments (JSON)");
  auto* limitcheck = app.add_subcommand("limitcheck", "discrete-to-continuum limit rate (JSON + CSV)");
  for (CLI::App* sub : {density, kernel, corr, sample, validate, scaling, lpp, limitcheck})
    add_common(sub, ops, config_path, save_path);

  flag<std::vector<int>>(density, ops, "--species", [](RunConfig& c, const std::vector<int>& v) { c.species = v; },
                         "species list (default: all)")
      ->delimiter(',');
  flag<std::string>(density, ops, "--grid", [](RunConfig& c, const std::string& v) { c.grid = parse_grid(v); },
                    "min:max:step (use --grid=-2:2:0.1 for a negative start)");
  for (CLI::App* sub : {kernel, corr})
    flag<std::string>(sub, ops, "--points", [](RunConfig& c, const std::string& v) { c.points = parse_points(v); },
                      "species:y,species:y,...");

  flag<std::string>(sample, ops, "--process", [](RunConfig& c, const std::string& v) { c.process = v; },
                    "gue-minor, lue-chain, projection, process or wishart")
      ->check(CLI::IsMember(process_names()));
  for (CLI::App* sub : {sample, validate, lpp})
    flag<int>(sub, ops, "--n", [](RunConfig& c, int v) { c.n = v; }, "top species size or lattice size");
  for (CLI::App* sub : {sample, lpp})
    flag<int>(sub, ops, "--depth", [](RunConfig& c, int v) { c.depth = v; }, "projection steps / extra columns");
  flag<std::vector<double>>(sample, ops, "--pi", [](RunConfig& c, const std::vector<double>& v) { c.pi = v; },
                            "row rates (wishart)")
      ->delimiter(',');
  flag<std::vector<double>>(sample, ops, "--pihat", [](RunConfig& c, const std::vector<double>& v) { c.pihat = v; },
                            "column rates (wishart)")
      ->delimiter(',');

  flag<std::string>(validate, ops, "--suite", [](RunConfig& c, const std::string& v) { c.suite = v; }, "suite name")
      ->check(CLI::IsMember(suite_names()));

  flag<std::string>(scaling, ops, "--regime", [](RunConfig& c, const std::string& v) { c.regime = v; },
                    "soft, bulk, hard or soft-drift")
      ->check(CLI::IsMember({"soft", "bulk", "hard", "soft-drift"}));
  flag<std::vector<int>>(scaling, ops, "--N-list", [](RunConfig& c, const std::vector<int>& v) { c.N_list = v; },
                         "matrix sizes, e.g. 50,100,200")
      ->delimiter(',');
  flag<std::vector<double>>(scaling, ops, "--offsets", [](RunConfig& c, const std::vector<double>& v) { c.offsets = v; },
                            "species offsets c")
      ->delimiter(',');
  flag<std::vector<double>>(scaling, ops, "--positions",
                            [](RunConfig& c, const std::vector<double>& v) { c.positions = v; }, "scaled positions")
      ->delimiter(',');

  flag<std::string>(lpp, ops, "--mode", [](RunConfig& c, const std::string& v) { c.mode = v; }, "bridge, wishart or rsk")
      ->check(CLI::IsMember({"bridge", "wishart", "rsk"}));
  flag<double>(lpp, ops, "--scale", [](RunConfig& c, double v) { c.scale = v; },
               "site mean (bridge) or row rate (wishart); 1 is the matched case");

  flag<std::vector<double>>(limitcheck, ops, "--L-list", [](RunConfig& c, const std::vector<double>& v) { c.L_list = v; },
                            "lattice scales, e.g. 50,100,200")
      ->delimiter(',');
  flag<int>(limitcheck, ops, "--n1", [](RunConfig& c, int v) { c.lattice.n1 = v; }, "rows");
  flag<int>(limitcheck, ops, "--n2", [](RunConfig& c, int v) { c.lattice.n2 = v; }, "base columns");
  flag<int>(limitcheck, ops, "--p", [](RunConfig& c, int v) { c.lattice.p = v; }, "extra columns");
  flag<double>(limitcheck, ops, "--lattice-a", [](RunConfig& c, double v) { c.lattice.a = v; }, "rate parameter a");
  flag<std::vector<double>>(limitcheck, ops, "--as", [](RunConfig& c, const std::vector<double>& v) { c.lattice.a_s = v; },
                            "column parameters a_s")
      ->delimiter(',');
  flag<std::string>(limitcheck, ops, "--x", [](RunConfig& c, const std::string& v) { c.x = parse_species_values(v); },
                    "point, species separated by ';', e.g. '0.5;0.9,0.3;1.2,0.6,0.2'");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  std::string name = app.get_subcommands().front()->get_name();
  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    cfg.subcommand = name;
    for (const Op& op : ops) op(cfg);
    if (cfg.subcommand == "validate" && cfg.suite.empty()) throw ArgumentError("--suite is required");
    cfg.seed = resolve_seed(cfg);
    if (!save_path.empty()) save_config(cfg, save_path);
    const Outcome o = dispatch(cfg);
    for (const std::string& line : o.summary) out << line << '\n';
    if (o.code != kExitPass && o.diagnostic) err << o.diagnostic->dump() << '\n';
    return o.code;
  } catch (const ParameterError& e) {
    err << "minorkern " << name << ": " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const ArgumentError& e) {
    err << "minorkern " << name << ": " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    err << Json{{"error", "numeric"}, {"subcommand", name}, {"message", e.what()}, {"achieved", e.achieved()}}.dump()
        << '\n';
    return kExitFail;
  } catch (const RangeError& e) {
    err << Json{{"error", "range"}, {"subcommand", name}, {"message", e.what()}}.dump() << '\n';
    return kExitFail;
  } catch (const std::exception& e) {
    err << Json{{"error", "internal"}, {"subcommand", name}, {"message", e.what()}}.dump() << '\n';
    return kExitFail;
  }
}

}  // namespace minorkern::cli
