// Copyright 2026 The qec-sched Authors
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

#include "qecsched_tools/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "qecsched/json_io.hpp"
#include "qecsched/rounds.hpp"
#include "qecsched/scheduler.hpp"
#include "qecsched/verifier.hpp"

namespace qecsched::tools {

namespace fs = std::filesystem;

CodeFamily parse_family(std::string_view name) {
  if (name == "surface") return CodeFamily::kSurface;
  if (name == "repetition") return CodeFamily::kRepetition;
  throw UsageError("unknown code family '" + std::string(name) + "' (surface, repetition)");
}

const char* to_string(CodeFamily family) {
  return family == CodeFamily::kSurface ? "surface" : "repetition";
}

CssCode make_code(CodeFamily family, int d) {
  if (family == CodeFamily::kSurface) {
    if (d < 3 || d % 2 == 0) throw UsageError("surface code distance must be odd and >= 3");
    return rotated_surface_code(d);
  }
  if (d < 2) throw UsageError("repetition code distance must be >= 2");
  return repetition_code(d);
}

Layout make_layout(CodeFamily family, int d, int m) {
  if (m < 1) throw UsageError("need at least one ancilla");
  if (family == CodeFamily::kSurface) {
    if (m > 4 * d) throw UsageError("surround layout holds at most 4d ancillas");
    return surround_layout(d, m);
  }
  return line_layout(d, m);
}

SweepConfig sweep_config_from(const KeyValueConfig& cfg) {
  SweepConfig c;
  if (auto v = cfg.get("code")) c.family = parse_family(*v);
  if (auto v = cfg.get("d")) c.distances = parse_int_list(*v);
  if (auto v = cfg.get("m")) {
    c.rule = AncillaRule::kList;
    c.ancillas = parse_int_list(*v);
  }
  if (auto v = cfg.get("rule")) {
    if (*v == "list") {
      c.rule = AncillaRule::kList;
    } else if (*v == "all") {
      c.rule = AncillaRule::kAll;
    } else if (*v == "budget") {
      c.rule = AncillaRule::kBudget;
    } else {
      throw UsageError("unknown ancilla rule '" + *v + "' (list, all, budget)");
    }
  }
  if (auto v = cfg.get("budget")) c.budget = parse_int(*v);
  if (auto v = cfg.get("rounds")) {
    if (*v == "auto") {
      c.rounds.reset();
    } else {
      c.rounds = parse_int(*v);
    }
  }
  if (auto v = cfg.get("p_cnot")) c.noise.p_cnot = parse_double(*v);
  if (auto v = cfg.get("p_swap")) c.noise.p_swap = parse_double(*v);
  if (auto v = cfg.get("p_idle")) c.noise.p_idle = parse_double(*v);
  if (auto v = cfg.get("emit")) c.emit_stim = parse_bool(*v);
  if (auto v = cfg.get("write_circuits")) c.write_circuits = parse_bool(*v);
  if (auto v = cfg.get("out_dir")) c.out_dir = *v;
  if (auto v = cfg.get("csv")) c.csv_path = *v;
  if (auto v = cfg.get("workers")) c.workers = parse_int(*v);
  if (auto v = cfg.get("seed")) c.seed = static_cast<std::uint64_t>(parse_int(*v));
  return c;
}

void validate(const SweepConfig& config) {
  if (config.distances.empty()) throw UsageError("sweep needs a non-empty distance list");
  if (config.rule == AncillaRule::kList && config.ancillas.empty()) {
    throw UsageError("sweep needs a non-empty ancilla list");
  }
  if (config.rounds && *config.rounds < 1) throw UsageError("rounds must be >= 1");
  if (config.workers < 0) throw UsageError("workers must be >= 0");
  try {
    check_noise(config.noise);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (int d : config.distances) {
    make_code(config.family, d);
    for (int m : ancilla_counts(config, d)) make_layout(config.family, d, m);
  }
}

std::vector<int> ancilla_counts(const SweepConfig& config, int d) {
  switch (config.rule) {
    case AncillaRule::kList:
      return config.ancillas;
    case AncillaRule::kAll: {
      std::vector<int> out;
      for (int m = 1; m <= 4 * d - 1; ++m) out.push_back(m);
      return out;
    }
    case AncillaRule::kBudget: {
      const int m = std::min(config.budget - d * d, 4 * d);
      if (m < 1) {
        throw UsageError("budget " + std::to_string(config.budget) + " leaves no ancilla at d=" + std::to_string(d));
      }
      return {m};
    }
  }
  return {};
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QEC_SCHED_THREADS")) {
    try {
      const int v = parse_int(env);
      if (v > 0) return v;
    } catch (const UsageError&) {
    }
    throw UsageError("QEC_SCHED_THREADS must be a positive integer");
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

VerificationFailed::VerificationFailed(int d, int m, std::string repro_path, const std::string& what)
    : std::runtime_error(what), d_(d), m_(m), repro_path_(std::move(repro_path)) {}

namespace {

struct Point {
  int d;
  int m;
};

struct Outcome {
  SweepRow row;
  std::string failure;
  std::string repro;
  std::exception_ptr error;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

std::string stem(const SweepConfig& config, const Point& p) {
  return std::string(to_string(config.family)) + "_d" + std::to_string(p.d) + "_m" + std::to_string(p.m);
}

Outcome run_point(const SweepConfig& config, const Point& p) {
  Outcome out;
  out.row.d = p.d;
  out.row.m = p.m;
  const auto code = make_code(config.family, p.d);
  const auto layout = make_layout(config.family, p.d, p.m);
  const auto result = schedule(layout, code.generators_of(PauliType::kZ));
  out.row.metrics = metrics(result.circuit);

  const auto report = verify_run(result.circuit, layout.graph, config.seed);
  out.row.verify_pass = report.ok;
  const fs::path dir(config.out_dir);
  if (!report.ok) {
    out.failure = !report.structure.ok ? report.structure.failure
                  : !report.gf2_failure.empty() ? report.gf2_failure
                                                : report.tableau.failure;
    out.repro = (dir / (stem(config, p) + ".failed.json")).string();
    write_file(out.repro, json::circuit_to_json(result.circuit, &layout));
    return out;
  }
  if (config.write_circuits) {
    out.row.circuit_path = (dir / (stem(config, p) + ".json")).string();
    write_file(out.row.circuit_path, json::circuit_to_json(result.circuit, &layout));
  }
  if (config.emit_stim) {
    const int rounds = config.rounds.value_or(default_rounds(p.d));
    const auto exp = build_memory_experiment(code, layout, rounds);
    write_file(dir / (stem(config, p) + ".stim"), emit_noisy_circuit(exp, config.noise));
  }
  return out;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  validate(config);
  std::vector<Point> points;
  for (int d : config.distances) {
    for (int m : ancilla_counts(config, d)) points.push_back({d, m});
  }
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return a.d != b.d ? a.d < b.d : a.m < b.m;
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Point& a, const Point& b) { return a.d == b.d && a.m == b.m; }),
               points.end());
  fs::create_directories(config.out_dir);

  std::vector<Outcome> outcomes(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        outcomes[i] = run_point(config, points[i]);
      } catch (...) {
        outcomes[i].error = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(resolve_workers(config.workers), static_cast<int>(points.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& o = outcomes[i];
    if (o.error) std::rethrow_exception(o.error);
    if (!o.row.verify_pass) {
      throw VerificationFailed(o.row.d, o.row.m, o.repro,
                               "verification failed at d=" + std::to_string(o.row.d) + " m=" +
                                   std::to_string(o.row.m) + ": " + o.failure);
    }
    rows.push_back(std::move(o.row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "d,m,depth,volume,ancilla_volume,verify_pass,circuit\n";
  for (const auto& r : rows) {
    out << r.d << ',' << r.m << ',' << r.metrics.depth << ',' << r.metrics.volume << ','
        << r.metrics.ancilla_volume << ',' << (r.verify_pass ? "true" : "false") << ',' << r.circuit_path << '\n';
  }
  return out.str();
}

}  // namespace qecsched::tools
