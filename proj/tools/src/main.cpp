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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qecsched/json_io.hpp"
#include "qecsched/rounds.hpp"
#include "qecsched/scheduler.hpp"
#include "qecsched/stim_emit.hpp"
#include "qecsched/verifier.hpp"
#include "qecsched_tools/config.hpp"
#include "qecsched_tools/sweep.hpp"

using namespace qecsched;
using namespace qecsched::tools;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;
constexpr int kExitGuard = 4;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

int parse_rounds(const std::string& text, int d) {
  if (text.empty() || text == "auto") return default_rounds(d);
  const int r = parse_int(text);
  if (r < 1) throw UsageError("rounds must be >= 1");
  return r;
}

CssCode checked_code(const CssCode& code) {
  const auto report = validate_css(code);
  if (!report.ok) throw UsageError("invalid code (" + report.violation + "): " + report.detail);
  return code;
}

struct InstanceArgs {
  std::string family = "surface";
  int d = 3;
  int m = 1;
  std::string code_file;
  std::string layout_file;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& args) {
  cmd->add_option("--code", args.family, "Code family: surface or repetition")->capture_default_str();
  cmd->add_option("--d", args.d, "Code distance")->capture_default_str();
  cmd->add_option("--m", args.m, "Number of ancillas")->capture_default_str();
  cmd->add_option("--code-file", args.code_file, "Code JSON (overrides --code/--d)");
  cmd->add_option("--layout-file", args.layout_file, "Layout JSON (overrides the default layout)");
}

std::pair<CssCode, Layout> load_instance(const InstanceArgs& args) {
  CssCode code;
  if (!args.code_file.empty()) {
    code = checked_code(json::code_from_json(read_file(args.code_file)));
  } else {
    code = make_code(parse_family(args.family), args.d);
  }
  Layout layout;
  if (!args.layout_file.empty()) {
    layout = json::layout_from_json(read_file(args.layout_file));
  } else if (!args.code_file.empty()) {
    throw UsageError("--code-file needs --layout-file");
  } else {
    layout = make_layout(parse_family(args.family), args.d, args.m);
  }
  if (layout.num_data != code.num_data) throw UsageError("layout and code disagree on the number of data qubits");
  return {std::move(code), std::move(layout)};
}

nlohmann::json report_json(const RunVerification& r) {
  nlohmann::json structure = {{"ok", r.structure.ok}, {"failure", r.structure.failure}};
  structure["timestep"] = r.structure.timestep ? nlohmann::json(*r.structure.timestep) : nlohmann::json(nullptr);
  nlohmann::json tableau = {{"ran", r.tableau_ran}, {"ok", r.tableau.ok}, {"failure", r.tableau.failure}};
  tableau["journal_index"] =
      r.tableau.journal_index ? nlohmann::json(*r.tableau.journal_index) : nlohmann::json(nullptr);
  return {{"pass", r.ok},
          {"structure", structure},
          {"gf2",
           {{"ok", r.structure.ok && r.gf2_failure.empty()},
            {"inputs", r.gf2_inputs},
            {"exhaustive", r.gf2_exhaustive},
            {"failure", r.gf2_failure}}},
          {"tableau", tableau}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syndrome-measurement scheduling with reusable ancillas"};
  app.require_subcommand(1);

  // gen-code
  auto* gen_code = app.add_subcommand("gen-code", "Write a CSS code as JSON");
  std::string gc_family = "surface";
  int gc_d = 3;
  std::string gc_out;
  gen_code->add_option("--code", gc_family, "surface or repetition")->capture_default_str();
  gen_code->add_option("--d", gc_d, "Code distance")->capture_default_str();
  gen_code->add_option("-o,--out", gc_out, "Output file (default stdout)");

  // gen-layout
  auto* gen_layout = app.add_subcommand("gen-layout", "Write a connectivity graph and placement as JSON");
  std::string gl_kind = "surround";
  int gl_d = 3;
  int gl_m = 1;
  int gl_n = 0;
  std::string gl_out;
  gen_layout->add_option("--kind", gl_kind, "surround (grid with an ancilla ring) or line")->capture_default_str();
  gen_layout->add_option("--d", gl_d, "Code distance (surround)")->capture_default_str();
  gen_layout->add_option("--m", gl_m, "Number of ancillas")->capture_default_str();
  gen_layout->add_option("--n", gl_n, "Number of data qubits (line; default d)");
  gen_layout->add_option("-o,--out", gl_out, "Output file (default stdout)");

  // schedule
  auto* sched = app.add_subcommand("schedule", "Schedule one basis' stabilizer measurements");
  InstanceArgs sc_args;
  std::string sc_basis = "Z";
  long long sc_guard = 0;
  bool sc_raw = false;
  std::string sc_out;
  std::string sc_telemetry;
  add_instance_options(sched, sc_args);
  sched->add_option("--basis", sc_basis, "Z or X")->capture_default_str();
  sched->add_option("--guard", sc_guard, "Step budget (default 64*(n+m)*|L|)");
  sched->add_flag("--no-cleanup", sc_raw, "Skip unnecessary-gate removal");
  sched->add_option("-o,--out", sc_out, "Circuit JSON (default stdout)");
  sched->add_option("--telemetry", sc_telemetry, "Per-step telemetry JSON");

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a circuit JSON; writes a JSON report");
  std::string vf_in;
  std::string vf_layout;
  std::uint64_t vf_seed = 1;
  int vf_inputs = 100;
  std::string vf_out;
  verify->add_option("--in", vf_in, "Circuit JSON")->required();
  verify->add_option("--layout-file", vf_layout, "Layout JSON when the circuit has none embedded");
  verify->add_option("--seed", vf_seed, "Seed for random GF(2) inputs")->capture_default_str();
  verify->add_option("--inputs", vf_inputs, "Random GF(2) inputs when n > 10")->capture_default_str();
  verify->add_option("-o,--out", vf_out, "Report file (default stdout)");

  // metrics
  auto* met = app.add_subcommand("metrics", "Depth, volume and ancilla volume of a circuit JSON");
  std::string mt_in;
  std::string mt_out;
  met->add_option("--in", mt_in, "Circuit JSON")->required();
  met->add_option("-o,--out", mt_out, "Output file (default stdout)");

  // emit
  auto* emit = app.add_subcommand("emit", "Emit a noisy memory experiment in Stim format");
  InstanceArgs em_args;
  NoiseParams em_noise;
  std::string em_rounds = "auto";
  std::string em_out;
  std::string em_json;
  add_instance_options(emit, em_args);
  emit->add_option("--p-cnot", em_noise.p_cnot, "Two-qubit depolarizing after each CNOT");
  emit->add_option("--p-swap", em_noise.p_swap, "Two-qubit depolarizing after each SWAP");
  emit->add_option("--p-idle", em_noise.p_idle, "One-qubit depolarizing per idle qubit per timestep");
  emit->add_option("--rounds", em_rounds, "Number of rounds or 'auto' (max(1, d-2))")->capture_default_str();
  emit->add_option("-o,--out", em_out, "Stim file (default stdout)");
  emit->add_option("--experiment", em_json, "Also write the experiment as JSON");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Schedule, verify and tabulate a grid of (d, m) points");
  std::string sw_config;
  std::map<std::string, std::string> sw_flags;
  sweep->add_option("--config", sw_config, "key = value config file; flags override it");
  for (const auto& [flag, key, help] : std::vector<std::tuple<std::string, std::string, std::string>>{
           {"--code", "code", "surface or repetition"},
           {"--d", "d", "Distance list, e.g. 3,5,7 or 3..7"},
           {"--m", "m", "Ancilla list, e.g. 1,27 or 1..27"},
           {"--rule", "rule", "list, all (1..4d-1) or budget (min(budget-d^2, 4d))"},
           {"--budget", "budget", "Total physical qubit budget for the budget rule"},
           {"--rounds", "rounds", "Rounds for emitted circuits or 'auto'"},
           {"--p-cnot", "p_cnot", "CNOT error for emitted circuits"},
           {"--p-swap", "p_swap", "SWAP error for emitted circuits"},
           {"--p-idle", "p_idle", "Idle error for emitted circuits"},
           {"--emit", "emit", "Also emit a Stim memory experiment per point (true/false)"},
           {"--write-circuits", "write_circuits", "Write circuit JSON per point (true/false)"},
           {"--out-dir", "out_dir", "Directory for per-point artifacts"},
           {"--csv", "csv", "CSV output path ('-' for stdout)"},
           {"--workers", "workers", "Worker count (default QEC_SCHED_THREADS or all cores)"},
           {"--seed", "seed", "Seed for random GF(2) inputs"},
       }) {
    sweep->add_option_function<std::string>(
        flag, [&sw_flags, key = key](const std::string& v) { sw_flags[key] = v; }, help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_code) {
      const auto code = checked_code(make_code(parse_family(gc_family), gc_d));
      write_output(gc_out, json::code_to_json(code));
    } else if (*gen_layout) {
      Layout layout;
      if (gl_kind == "surround") {
        layout = make_layout(CodeFamily::kSurface, gl_d, gl_m);
      } else if (gl_kind == "line") {
        if (gl_m < 1) throw UsageError("need at least one ancilla");
        layout = line_layout(gl_n > 0 ? gl_n : gl_d, gl_m);
      } else {
        throw UsageError("unknown layout kind '" + gl_kind + "' (surround, line)");
      }
      write_output(gl_out, json::layout_to_json(layout));
    } else if (*sched) {
      const auto [code, layout] = load_instance(sc_args);
      ScheduleOptions opts;
      if (sc_guard > 0) opts.guard = sc_guard;
      opts.remove_unnecessary = !sc_raw;
      const auto result = schedule(layout, code.generators_of(parse_pauli(sc_basis)), opts);
      write_output(sc_out, json::circuit_to_json(result.circuit, &layout));
      if (!sc_telemetry.empty()) write_output(sc_telemetry, json::telemetry_to_json(result.telemetry));
    } else if (*verify) {
      auto doc = json::circuit_from_json(read_file(vf_in));
      if (!vf_layout.empty()) doc.layout = json::layout_from_json(read_file(vf_layout));
      if (!doc.layout) throw UsageError("circuit has no embedded layout; pass --layout-file");
      const auto report = verify_run(doc.circuit, doc.layout->graph, vf_seed, vf_inputs);
      write_output(vf_out, report_json(report).dump(2));
      return report.ok ? kExitOk : kExitVerify;
    } else if (*met) {
      const auto doc = json::circuit_from_json(read_file(mt_in));
      const auto mtr = metrics(doc.circuit);
      nlohmann::json out = {{"depth", mtr.depth}, {"volume", mtr.volume}, {"ancilla_volume", mtr.ancilla_volume}};
      write_output(mt_out, out.dump(2));
    } else if (*emit) {
      check_noise(em_noise);
      const auto [code, layout] = load_instance(em_args);
      const int rounds = parse_rounds(em_rounds, em_args.d);
      const auto exp = build_memory_experiment(code, layout, rounds);
      for (const auto& seg : exp.round.segments) {
        if (seg.phase != RoundPhase::kZForward && seg.phase != RoundPhase::kXForward) continue;
        const auto report = verify_run(seg.circuit, layout.graph);
        if (!report.ok) {
          std::cerr << "verification failed for the " << to_string(seg.phase) << " run\n";
          return kExitVerify;
        }
      }
      if (layout.graph.vertex_count() <= kTableauQubitLimit) {
        const auto report = tableau_verify(exp);
        if (!report.ok) {
          std::cerr << "memory experiment failed tableau verification: " << report.failure << "\n";
          return kExitVerify;
        }
      }
      write_output(em_out, emit_noisy_circuit(exp, em_noise));
      if (!em_json.empty()) write_output(em_json, json::experiment_to_json(exp));
    } else if (*sweep) {
      KeyValueConfig cfg = sw_config.empty() ? KeyValueConfig{} : KeyValueConfig::load(sw_config);
      for (const auto& [k, v] : sw_flags) cfg.set(k, v);
      const auto config = sweep_config_from(cfg);
      const auto rows = run_sweep(config);
      write_output(config.csv_path, sweep_csv(rows));
    }
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  } catch (const VerificationFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!e.repro_path().empty()) std::cerr << "offending instance written to " << e.repro_path() << "\n";
    return kExitVerify;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
