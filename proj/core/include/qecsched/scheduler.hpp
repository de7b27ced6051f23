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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecsched/circuit.hpp"
#include "qecsched/layout.hpp"

namespace qecsched {

/// Per-ancilla classification made while deciding a timestep's actions.
/// kSkipped marks an ancilla already touched earlier in the same timestep.
enum class AncillaCase : std::uint8_t { kSkipped = 0, kCase1 = 1, kCase2 = 2, kCase3 = 3, kCase4 = 4 };

/// Classification of a timestep by which cases occurred.
enum class Situation : std::uint8_t { kA, kB, kC, kD };

char to_char(Situation s);

/// present[k] is true iff some ancilla was assigned case k+1.
using CaseFlags = std::array<bool, 4>;

CaseFlags case_flags(std::span<const AncillaCase> cases);

/// A: case 1 present. B: only case 4. C: case 2 without case 1 or 3.
/// D: case 3 without case 1. Throws std::invalid_argument for an all-false
/// pattern.
Situation situation_of(const CaseFlags& flags);
Situation situation_of(std::span<const AncillaCase> cases);

struct StepTelemetry {
  Situation situation = Situation::kB;
  CaseFlags flags{};
  std::vector<AncillaCase> cases;
  bool tie_break = false;
  int measurements = 0;
  int labels_remaining = 0;
};

/// Selected Case-2 move: SWAP the ancilla with `neighbor` to approach `data`.
struct SwapTarget {
  int neighbor = 0;  // unified qubit id
  int data = 0;      // data index
};

/// Tie-break candidate for one unmeasured label.
struct TieBreakCandidate {
  int distance = 0;
  int data = 0;     // data index
  int ancilla = 0;  // ancilla index
  int label = 0;    // index into the run's labels
};

/// Thrown when the main loop runs past its step budget.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(long long step, std::vector<StepTelemetry> telemetry);
  long long step() const { return step_; }
  const std::vector<StepTelemetry>& telemetry() const { return telemetry_; }

 private:
  long long step_;
  std::vector<StepTelemetry> telemetry_;
};

/// Thrown when neither the case rules nor the tie-break can issue an action
/// while labels remain.
class InternalStall : public std::runtime_error {
 public:
  InternalStall(long long step, std::string detail);
  long long step() const { return step_; }

 private:
  long long step_;
};

/// The state (M, P, L) plus the per-timestep unused mask U.
///
/// Everything is index-ordered, so identical inputs give identical circuits.
class SchedulerState {
 public:
  SchedulerState(const ConnectivityGraph& graph, Placement placement,
                 std::vector<GeneratorLabel> labels, int num_data, int num_ancilla);

  int num_data() const { return num_data_; }
  int num_ancilla() const { return num_ancilla_; }
  const ParityMatrix& matrix() const { return matrix_; }
  const Placement& placement() const { return placement_; }
  const std::vector<GeneratorLabel>& labels() const { return labels_; }
  /// Unmeasured labels, in their original order.
  const std::vector<int>& remaining() const { return remaining_; }
  bool done() const { return remaining_.empty(); }

  /// Starts a new timestep: every qubit unused.
  void reset_usage();
  bool unused(int qubit) const { return unused_[static_cast<std::size_t>(qubit)] != 0; }
  void mark_used(int qubit) { unused_[static_cast<std::size_t>(qubit)] = 0; }

  std::optional<int> get_candidate(int ancilla) const;
  std::optional<SwapTarget> get_target(int ancilla) const;

  struct Decision {
    Timestep actions;
    std::vector<AncillaCase> cases;
  };
  /// Runs the four-case rules over a_1..a_m for one timestep, mutating the
  /// state as actions are issued.
  Decision decide_actions();

  std::vector<TieBreakCandidate> tie_break_candidates() const;
  /// Forces SWAPs of usable ancillas toward unmeasured labels. May return an
  /// empty timestep only when no usable ancilla exists.
  Timestep tie_break();

  /// Vertices adjacent to q1 that are strictly closer to q2 and hold an
  /// unused qubit, ascending. q2's own vertex is never included.
  std::vector<int> approach_vertices(int q1, int q2) const;

 private:
  bool has_superset_label(int ancilla, int data) const;
  void cnot(int ancilla, int data, Timestep& out);
  void swap(int q1, int q2, Timestep& out);

  const ConnectivityGraph* graph_;
  int num_data_;
  int num_ancilla_;
  ParityMatrix matrix_;
  Placement placement_;
  std::vector<GeneratorLabel> labels_;
  std::vector<BitRow> label_bits_;
  std::vector<std::vector<int>> labels_of_data_;
  std::vector<char> active_;
  std::vector<int> remaining_;
  std::vector<char> unused_;
};

struct ScheduleOptions {
  /// Step budget; defaults to 64 * (n + m) * |L|.
  std::optional<long long> guard;
  /// Apply unnecessary-gate removal to the result.
  bool remove_unnecessary = true;
};

struct ScheduleResult {
  ScheduledCircuit circuit;
  /// Circuit as produced by the main loop, before gate removal.
  ScheduledCircuit raw_circuit;
  /// M when the label list emptied.
  ParityMatrix final_matrix;
  std::vector<StepTelemetry> telemetry;
};

/// Schedules syndrome measurement of `labels` (one Pauli type) on `graph`
/// starting from `placement`.
ScheduleResult schedule(const ConnectivityGraph& graph, const Placement& placement,
                        std::vector<GeneratorLabel> labels, int num_data, int num_ancilla,
                        const ScheduleOptions& options = {});

/// Convenience overload on a Layout.
ScheduleResult schedule(const Layout& layout, std::vector<GeneratorLabel> labels,
                        const ScheduleOptions& options = {});

/// Deletes, per ancilla, the CNOTs issued after its last measurement that
/// left 1-entries in `final_matrix`, then cancels SWAP pairs on the same
/// qubits that are adjacent in both qubits' action streams. Empty timesteps
/// are dropped.
ScheduledCircuit remove_unnecessary_gates(const ScheduledCircuit& circuit,
                                          const ParityMatrix& final_matrix);

/// Throws std::logic_error if two actions in one timestep share a qubit.
void check_disjoint_supports(const Timestep& timestep, int num_data);

}  // namespace qecsched
