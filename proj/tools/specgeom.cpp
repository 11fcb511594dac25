// Copyright 2026 The Authors.
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

// specgeom command line: verify scenarios, decompose spaces, list spectra and
// check monotonicity. Exit codes: 0 all pass, 1 violation, 2 configuration or
// numeric error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "specgeom/specgeom.hpp"

namespace {

using namespace specgeom;

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

struct ReportTarget {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit ReportTarget(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) throw ConfigError("cannot open " + path + " for writing");
    os = &file;
  }
};

int emit(const ScenarioResult& res, const std::string& out, const std::string& format) {
  ReportTarget target(out);
  ReportWriter writer(*target.os, parse_report_format(format));
  writer.write_all(res.records);
  target.os->flush();
  for (const auto& n : res.notes) std::cerr << "note: " << n << "\n";
  std::size_t failed = 0;
  for (const auto& r : res.records) failed += r.pass ? 0 : 1;
  std::cerr << res.scenario << ": " << (res.pass ? "PASS" : "FAIL") << " (" << res.records.size()
            << " records, " << failed << " failing)\n";
  return res.pass ? kExitPass : kExitViolation;
}

// Expands `--config FILE` into `--key value` pairs placed before the other
// arguments, so flags given on the command line win (options take the last value).
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc), from_file, rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config " + path);
    std::string line;
    while (std::getline(is, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto trim = [](std::string t) {
        const auto b = t.find_first_not_of(" \t\r");
        const auto e = t.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("config line without '=': " + line);
      const auto key = trim(line.substr(0, eq));
      if (key.empty() || key == "config") throw ConfigError("bad config key in: " + line);
      from_file.push_back("--" + key);
      from_file.push_back(trim(line.substr(eq + 1)));
    }
  }
  // Keep the subcommand and its positional first.
  std::vector<std::string> out;
  std::size_t lead = 0;
  while (lead < rest.size() && rest[lead].rfind("-", 0) != 0 && lead < 2) out.push_back(rest[lead++]);
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(lead), rest.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"specgeom: spectral geometry verification workbench"};
  app.require_subcommand(1);

  // verify
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  auto* verify = app.add_subcommand("verify", "run a named verification scenario");
  ScenarioConfig cfg;
  std::size_t kmax = 0, points = 0;
  int resolution = 0;
  double tol = 0.0;
  std::string out, format = "jsonl";
  verify->add_option("scenario", cfg.name, "scenario name")->required();
  auto* o_kmax = verify->add_option("--kmax", kmax, "largest eigenvalue index or sweep size");
  auto* o_points = verify->add_option("--points", points, "sample count");
  auto* o_res = verify->add_option("--resolution", resolution, "grid resolution per side");
  verify->add_option("--seed", cfg.seed, "base seed");
  auto* o_tol = verify->add_option("--tol", tol, "tolerance override");
  verify->add_option("--model", cfg.model, "model override, e.g. torus:1,1 or sphere:2,1");
  verify->add_option("--submanifold", cfg.submanifold, "submanifold override");
  verify->add_option("--factors", cfg.factors, "random conformal factors (thm-mt)");
  verify->add_option("--out", out, "output path (default stdout)");
  verify->add_option("--format", format, "jsonl or csv");
  std::string config_path;  // consumed by expand_config; listed for --help
  verify->add_option("--config", config_path, "flat key=value file mirroring the flags (expanded before parsing)");

  // decompose
  auto* dec = app.add_subcommand("decompose", "decompose a finite metric-measure space");
  std::string space_path, matrix_path;
  std::size_t dec_k = 0;
  double r0 = 1.0 / 1600.0;
  int bg_dim = 2;
  dec->add_option("--space", space_path, "space CSV (id,x1..xd,weight plus metric tag)")->required();
  dec->add_option("--matrix", matrix_path, "dense distance matrix CSV for precomputed spaces");
  dec->add_option("--k", dec_k, "eigenvalue index")->required();
  dec->add_option("--r0", r0, "neighbourhood radius");
  dec->add_option("--dim", bg_dim, "dimension of the Bishop-Gromov refinement");

  // spectrum
  auto* spec = app.add_subcommand("spectrum", "analytic spectrum with Weyl ratios");
  std::string model_spec;
  std::size_t spec_kmax = 0;
  spec->add_option("--model", model_spec, "model, e.g. torus:6.283185307179586,6.283185307179586")->required();
  spec->add_option("--kmax", spec_kmax, "largest index")->required();

  // monotonicity
  auto* mono = app.add_subcommand("monotonicity", "normalized volume monotonicity");
  std::string sub_spec, mono_out, mono_format = "jsonl";
  std::size_t mono_points = 100000;
  std::uint64_t mono_seed = 1;
  double mono_tol = 1e-3;
  mono->add_option("--submanifold", sub_spec, "submanifold, e.g. clifford_torus:1")->required();
  mono->add_option("--points", mono_points, "sample count");
  mono->add_option("--seed", mono_seed, "seed");
  mono->add_option("--tol", mono_tol, "tolerance");
  mono->add_option("--out", mono_out, "output path (default stdout)");
  mono->add_option("--format", mono_format, "jsonl or csv");

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitError;
  }

  try {
    if (*verify) {
      if (o_kmax->count()) cfg.kmax = kmax;
      if (o_points->count()) cfg.points = points;
      if (o_res->count()) cfg.resolution = resolution;
      if (o_tol->count()) cfg.tol = tol;
      parse_report_format(format);
      return emit(run_scenario(cfg), out, format);
    }
    if (*dec) {
      if (dec_k < 1) throw ConfigError("--k must be >= 1");
      const auto space = load_space(space_path, matrix_path);
      DecomposeOptions opt;
      opt.r0 = r0;
      const auto res = decompose(space, dec_k, BishopGromovRefinement{bg_dim}, opt);
      const auto cert = verify_decomposition(space, res);
      auto j = decomposition_to_json(res);
      bool ok = true;
      auto& indep = j["independent_certificate"] = nlohmann::ordered_json::object();
      for (const auto& e : cert) {
        indep[e.name] = e.ok;
        ok = ok && e.ok;
      }
      std::cout << j.dump(2) << "\n";
      return ok ? kExitPass : kExitViolation;
    }
    if (*spec) {
      if (spec_kmax < 1) throw ConfigError("--kmax must be >= 1");
      const auto model = parse_model(model_spec);
      const auto est = intrinsic_spectrum(model, spec_kmax);
      std::cout << "k,lambda,ratio,kind\n";
      char buf[128];
      for (std::size_t k = 0; k <= spec_kmax; ++k) {
        double ratio = 0.0;
        if (k > 0) {
          BoundInputs in;
          in.lambda = est.eigenvalues[k];
          in.k = double(k);
          in.dim = model_dim(model);
          in.volume = model_volume(model);
          ratio = bound_ratio(BoundKind::weyl, in);
        }
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,", k, est.eigenvalues[k], ratio);
        std::cout << buf << to_string(est.method) << "\n";
      }
      return kExitPass;
    }
    ScenarioConfig mc;
    mc.name = "prop-gbm";
    mc.submanifold = sub_spec;
    mc.points = mono_points;
    mc.seed = mono_seed;
    mc.tol = mono_tol;
    mc.validate();
    parse_report_format(mono_format);
    return emit(scenario_prop_gbm(mc), mono_out, mono_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
