// Copyright 2026 The brcomp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// brcomp: command-line accountant. Talks to the library through the C API
// only.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "brcomp/brcomp.h"
#include "json.hpp"

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitCap = 3;
constexpr int kExitIo = 4;
constexpr double kUnderflow = 1e-300;

struct Flags {
  double eps = NAN;
  std::string eps_file;
  int64_t k = 1;
  int64_t k_max = 1;
  double eps_g = 0.0;
  double delta_g = NAN;
  std::string method = "br-optcomp";
  std::string methods =
      "dp-optcomp-half,br-optcomp,mgf,optkl,dr19,drv10,dp-optcomp";
  std::string format = "csv";
  std::string out = "-";
  std::string level = "fast";
  uint64_t seed = 20260101;
  brcomp_options opts{};
};

int ExitCode(brcomp_status s) {
  switch (s) {
    case BRCOMP_OK:
      return 0;
    case BRCOMP_E_DOMAIN:
    case BRCOMP_E_PRECONDITION:
    case BRCOMP_E_NULL:
      return kExitDomain;
    case BRCOMP_E_CAP:
    case BRCOMP_E_UNSUPPORTED:
      return kExitCap;
    case BRCOMP_E_IO:
      return kExitIo;
    case BRCOMP_E_INTERNAL:
      break;
  }
  return 1;
}

int Report(brcomp_status s) {
  std::fprintf(stderr, "brcomp: %s error: %s\n", brcomp_status_name(s),
               brcomp_last_error());
  return ExitCode(s);
}

std::string Num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string TakeString(char* s) {
  std::string out = s == nullptr ? "" : s;
  brcomp_string_free(s);
  return out;
}

// Loads the mechanism parameters; returns an exit code on failure.
int LoadEps(const Flags& f, CLI::App* cmd, std::vector<double>* eps) {
  const bool have_file = cmd->count("--eps-file") > 0;
  const bool have_eps = cmd->count("--eps") > 0;
  if (have_file == have_eps) {
    std::fprintf(stderr, "brcomp: give exactly one of --eps, --eps-file\n");
    return kExitDomain;
  }
  if (have_eps) {
    if (f.k < 0) {
      std::fprintf(stderr, "brcomp: --k must be >= 0\n");
      return kExitDomain;
    }
    eps->assign(static_cast<size_t>(f.k), f.eps);
    return 0;
  }
  std::ifstream in(f.eps_file);
  if (!in) {
    std::fprintf(stderr, "brcomp: cannot read %s\n", f.eps_file.c_str());
    return kExitIo;
  }
  std::string line;
  while (std::getline(in, line)) {
    const size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream ss(line);
    double v;
    if (!(ss >> v)) {
      std::fprintf(stderr, "brcomp: bad eps entry: %s\n", line.c_str());
      return kExitDomain;
    }
    eps->push_back(v);
  }
  if (cmd->count("--k") > 0 && static_cast<int64_t>(eps->size()) != f.k) {
    std::fprintf(stderr, "brcomp: --k disagrees with the eps file length\n");
    return kExitDomain;
  }
  return 0;
}

int Method(const std::string& name, brcomp_method* m) {
  const brcomp_status s = brcomp_method_from_name(name.c_str(), m);
  return s == BRCOMP_OK ? 0 : Report(s);
}

int CmdDelta(const Flags& f, CLI::App* cmd) {
  std::vector<double> eps;
  if (int rc = LoadEps(f, cmd, &eps)) return rc;
  brcomp_method m;
  if (int rc = Method(f.method, &m)) return rc;
  double delta = 0.0;
  char* meta = nullptr;
  const brcomp_status s = brcomp_compute_delta(
      m, eps.data(), eps.size(), f.eps_g, &f.opts, &delta, &meta);
  if (s != BRCOMP_OK) return Report(s);
  std::string info = TakeString(meta);
  if (delta < kUnderflow) {
    if (delta > 0.0) info += info.empty() ? "underflow" : ";underflow";
    delta = 0.0;
  }
  std::printf("%s\n", Num(delta).c_str());
  std::printf("solver_meta: %s\n", info.c_str());
  return 0;
}

int CmdEpsilon(const Flags& f, CLI::App* cmd) {
  std::vector<double> eps;
  if (int rc = LoadEps(f, cmd, &eps)) return rc;
  brcomp_method m;
  if (int rc = Method(f.method, &m)) return rc;
  double eps_g = 0.0;
  char* meta = nullptr;
  const brcomp_status s = brcomp_compute_epsilon(
      m, eps.data(), eps.size(), f.delta_g, &f.opts, &eps_g, &meta);
  if (s != BRCOMP_OK) return Report(s);
  std::printf("%s\n", Num(eps_g).c_str());
  std::printf("solver_meta: %s\n", TakeString(meta).c_str());
  return 0;
}

int CmdCurve(const Flags& f) {
  std::vector<brcomp_method> ms;
  std::stringstream ss(f.methods);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    brcomp_method m;
    if (int rc = Method(name, &m)) return rc;
    ms.push_back(m);
  }
  if (f.format != "csv" && f.format != "json") {
    std::fprintf(stderr, "brcomp: --format must be csv or json\n");
    return kExitDomain;
  }
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (f.out != "-") {
    file.open(f.out);
    if (!file) {
      std::fprintf(stderr, "brcomp: cannot write %s\n", f.out.c_str());
      return kExitIo;
    }
    os = &file;
  }
  brcomp_curve* curve = nullptr;
  const brcomp_status s = brcomp_curve_compute(
      f.eps, f.k_max, f.delta_g, ms.data(), ms.size(), &f.opts, &curve);
  if (s != BRCOMP_OK) return Report(s);
  nlohmann::json arr = nlohmann::json::array();
  if (f.format == "csv") *os << "k,method,eps,delta_g,eps_g,solver_meta\n";
  for (size_t i = 0; i < brcomp_curve_size(curve); ++i) {
    brcomp_curve_row r;
    brcomp_curve_row_at(curve, i, &r);
    if (f.format == "csv") {
      std::string meta = r.solver_meta;
      for (char& c : meta) {
        if (c == ',' || c == '\n') c = ';';
      }
      *os << r.k << ',' << brcomp_method_name(r.method) << ',' << Num(r.eps)
          << ',' << Num(r.delta_g) << ',' << Num(r.eps_g) << ',' << meta
          << '\n';
    } else {
      arr.push_back({{"k", r.k},
                     {"method", brcomp_method_name(r.method)},
                     {"eps", std::stod(Num(r.eps))},
                     {"delta_g", std::stod(Num(r.delta_g))},
                     {"eps_g", std::stod(Num(r.eps_g))},
                     {"solver_meta", r.solver_meta}});
    }
  }
  brcomp_curve_free(curve);
  if (f.format == "json") *os << arr.dump(2) << '\n';
  os->flush();
  if (!*os) {
    std::fprintf(stderr, "brcomp: write failed for %s\n", f.out.c_str());
    return kExitIo;
  }
  return 0;
}

int CmdGap(const Flags& f) {
  brcomp_gap gap;
  brcomp_strategy* strategy = nullptr;
  const brcomp_status s =
      brcomp_gap_certificate(f.eps, f.k, f.eps_g, &f.opts, &gap, &strategy);
  if (s != BRCOMP_OK) return Report(s);
  const double* t = brcomp_strategy_thresholds(strategy);
  std::vector<double> ts(t, t + brcomp_strategy_size(strategy));
  nlohmann::json j = {
      {"eps", f.eps},
      {"k", f.k},
      {"eps_g", f.eps_g},
      {"delta_nonadaptive", gap.delta_nonadaptive},
      {"t_nonadaptive", gap.t_nonadaptive},
      {"delta_adaptive_lb", gap.delta_adaptive_lb},
      {"gap", gap.gap},
      {"tolerance", gap.tolerance},
      {"strict", gap.strict != 0},
      {"strategy", {{"depth", brcomp_strategy_depth(strategy)}, {"t", ts}}},
  };
  brcomp_strategy_free(strategy);
  std::printf("%s\n", j.dump(2).c_str());
  return 0;
}

int CmdValidate(const Flags& f) {
  if (f.level != "fast" && f.level != "full") {
    std::fprintf(stderr, "brcomp: --level must be fast or full\n");
    return kExitDomain;
  }
  char* json = nullptr;
  int all_pass = 0;
  const brcomp_status s = brcomp_validate(
      f.level == "full" ? BRCOMP_VALIDATE_FULL : BRCOMP_VALIDATE_FAST, f.seed,
      f.opts.threads, &json, &all_pass);
  if (s != BRCOMP_OK) return Report(s);
  const std::string text = TakeString(json);
  if (f.format == "json") {
    std::printf("%s\n", text.c_str());
  } else {
    const nlohmann::json arr = nlohmann::json::parse(text);
    for (const auto& c : arr) {
      const std::string got =
          c["got"].is_null() ? "nan" : Num(c["got"].get<double>());
      std::printf("%s %-34s expected=%s got=%s tol=%s %s\n",
                  c["pass"].get<bool>() ? "PASS" : "FAIL",
                  c["check"].get<std::string>().c_str(),
                  Num(c["expected"].get<double>()).c_str(), got.c_str(),
                  Num(c["tol"].get<double>()).c_str(),
                  c["params"].get<std::string>().c_str());
    }
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Flags f;
  brcomp_options_default(&f.opts);
  CLI::App app{"Composition accountant for bounded-range mechanisms"};
  app.require_subcommand(1);

  auto add_eps = [&](CLI::App* c) {
    c->add_option("--eps", f.eps, "Per-mechanism eps (homogeneous)");
    c->add_option("--eps-file", f.eps_file, "Newline-separated eps list");
    c->add_option("--k", f.k, "Number of mechanisms");
  };
  auto add_solver = [&](CLI::App* c) {
    c->add_option("--t-grid", f.opts.t_grid, "Adaptive threshold grid size");
    c->add_option("--depth-cap", f.opts.depth_cap, "Adaptive depth cap");
    c->add_option("--lambda-max", f.opts.lambda_max, "Moment search ceiling");
  };

  CLI::App* delta = app.add_subcommand("delta", "Compute delta_g(eps_g)");
  add_eps(delta);
  add_solver(delta);
  delta->add_option("--eps-g", f.eps_g, "Target eps_g")->required();
  delta->add_option("--method", f.method, "Method id");

  CLI::App* epsilon = app.add_subcommand("epsilon", "Compute eps_g(delta_g)");
  add_eps(epsilon);
  add_solver(epsilon);
  epsilon->add_option("--delta-g", f.delta_g, "Target delta_g")->required();
  epsilon->add_option("--method", f.method, "Method id");

  CLI::App* curve = app.add_subcommand("curve", "Emit eps_g(k) curves");
  curve->add_option("--eps", f.eps, "Per-mechanism eps")->required();
  curve->add_option("--k-max", f.k_max, "Largest k")->required();
  curve->add_option("--delta-g", f.delta_g, "Target delta_g")->required();
  curve->add_option("--methods", f.methods, "Comma-separated method ids");
  curve->add_option("--format", f.format, "csv or json");
  curve->add_option("--out", f.out, "Output path, - for stdout");
  add_solver(curve);

  CLI::App* gap = app.add_subcommand("gap", "Certify an adaptivity gap");
  gap->add_option("--eps", f.eps, "Per-mechanism eps")->required();
  gap->add_option("--k", f.k, "Number of mechanisms")->required();
  gap->add_option("--eps-g", f.eps_g, "Target eps_g")->required();
  add_solver(gap);

  CLI::App* validate = app.add_subcommand("validate", "Run validation suite");
  validate->add_option("--level", f.level, "fast or full");
  validate->add_option("--seed", f.seed, "Random seed");
  validate->add_option("--format", f.format, "table or json");
  f.format = "csv";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitDomain;
  }

  if (delta->parsed()) return CmdDelta(f, delta);
  if (epsilon->parsed()) return CmdEpsilon(f, epsilon);
  if (curve->parsed()) return CmdCurve(f);
  if (gap->parsed()) return CmdGap(f);
  return CmdValidate(f);
}
