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

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecsched/circuit.hpp"
#include "qecsched/code.hpp"
#include "qecsched/layout.hpp"
#include "qecsched/stim_emit.hpp"
#include "qecsched_tools/config.hpp"

namespace qecsched::tools {

enum class CodeFamily { kSurface, kRepetition };

CodeFamily parse_family(std::string_view name);
const char* to_string(CodeFamily family);
CssCode make_code(CodeFamily family, int d);
/// Surround layout for surface codes, a line with ancillas after the data
/// for repetition codes.
Layout make_layout(CodeFamily family, int d, int m);

enum class AncillaRule { kList, kAll, kBudget };

struct SweepConfig {
  CodeFamily family = CodeFamily::kSurface;
  std::vector<int> distances;
  AncillaRule rule = AncillaRule::kList;
  std::vector<int> ancillas;
  int budget = 1000;
  std::optional<int> rounds;  // nullopt = default for d
  NoiseParams noise;
  bool emit_stim = false;
  bool write_circuits = true;
  std::string out_dir = "sweep_out";
  std::string csv_path = "sweep.csv";
  int workers = 0;  // 0 = QEC_SCHED_THREADS or hardware concurrency
  std::uint64_t seed = 1;
};

/// Reads keys code, d, m, rule, budget, rounds, p_cnot, p_swap, p_idle, emit,
/// write_circuits, out_dir, csv, workers, seed.
SweepConfig sweep_config_from(const KeyValueConfig& cfg);
void validate(const SweepConfig& config);

/// Ancilla counts for one distance. The budget rule gives
/// m = min(budget - d^2, 4d).
std::vector<int> ancilla_counts(const SweepConfig& config, int d);

int resolve_workers(int requested);

struct SweepRow {
  int d = 0;
  int m = 0;
  CircuitMetrics metrics;
  bool verify_pass = false;
  std::string circuit_path;
};

class VerificationFailed : public std::runtime_error {
 public:
  VerificationFailed(int d, int m, std::string repro_path, const std::string& what);
  int d() const { return d_; }
  int m() const { return m_; }
  const std::string& repro_path() const { return repro_path_; }

 private:
  int d_;
  int m_;
  std::string repro_path_;
};

/// Schedules and verifies every (d, m) point on a bounded worker pool. Rows
/// come back sorted by (d, m). Throws VerificationFailed (smallest failing
/// point) or GuardExceeded.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// Columns: d,m,depth,volume,ancilla_volume,verify_pass,circuit
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qecsched::tools
