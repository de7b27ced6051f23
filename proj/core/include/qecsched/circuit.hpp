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

#include <type_traits>
#include <variant>
#include <vector>

#include "qecsched/bit_row.hpp"
#include "qecsched/code.hpp"
#include "qecsched/layout.hpp"

namespace qecsched {

/// CNOT coupling ancilla a_i (0-based) with data qubit d_j (0-based). The
/// direction follows the run's basis: data->ancilla for Z checks,
/// ancilla->data for X checks.
struct CnotCouple {
  int ancilla = 0;
  int data = 0;
  friend bool operator==(const CnotCouple&, const CnotCouple&) = default;
};

/// SWAP of two qubits (unified ids) sitting on adjacent vertices.
struct Swap {
  int q1 = 0;
  int q2 = 0;
  friend bool operator==(const Swap&, const Swap&) = default;
};

/// Measurement of ancilla a_i in the run's basis followed by a reset. `label`
/// indexes ScheduledCircuit::labels.
struct MeasureReset {
  int ancilla = 0;
  int label = 0;
  friend bool operator==(const MeasureReset&, const MeasureReset&) = default;
};

using Action = std::variant<CnotCouple, Swap, MeasureReset>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline bool is_two_qubit(const Action& a) { return !std::holds_alternative<MeasureReset>(a); }

struct Timestep {
  std::vector<Action> actions;
  friend bool operator==(const Timestep&, const Timestep&) = default;
};

/// A single-basis syndrome measurement sequence (S_Z, S_X or a reversal).
struct ScheduledCircuit {
  PauliType basis = PauliType::kZ;
  int num_data = 0;
  int num_ancilla = 0;
  std::vector<GeneratorLabel> labels;
  std::vector<Timestep> timesteps;
  Placement start;
  Placement end;

  int ancilla_qubit(int ancilla) const { return num_data + ancilla; }
  friend bool operator==(const ScheduledCircuit&, const ScheduledCircuit&) = default;
};

/// Unified qubit ids touched by an action.
std::vector<int> action_qubits(const Action& action, int num_data);

/// Parity-processing matrix M: row i is CP(a_i) as a data-qubit bit set.
class ParityMatrix {
 public:
  ParityMatrix() = default;
  ParityMatrix(int num_ancilla, int num_data);

  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  BitRow& row(int i) { return rows_[static_cast<std::size_t>(i)]; }
  const BitRow& row(int i) const { return rows_[static_cast<std::size_t>(i)]; }
  bool get(int i, int j) const { return row(i).test(static_cast<std::size_t>(j)); }
  bool is_zero() const;

  friend bool operator==(const ParityMatrix&, const ParityMatrix&) = default;

 private:
  int cols_ = 0;
  std::vector<BitRow> rows_;
};

/// Replays CNOT flips and measurement resets. Throws std::logic_error when a
/// measurement fires on a row that differs from its label's support.
ParityMatrix replay_parity_matrix(const ScheduledCircuit& circuit);

/// Applies the circuit's SWAPs, in order, to its start placement.
Placement replay_placement(const ScheduledCircuit& circuit);

struct CircuitMetrics {
  long long depth = 0;
  long long volume = 0;
  long long ancilla_volume = 0;
  friend bool operator==(const CircuitMetrics&, const CircuitMetrics&) = default;
};

/// depth = timesteps holding at least one two-qubit action;
/// volume = depth * (n + m); ancilla_volume = depth * m.
CircuitMetrics metrics(const ScheduledCircuit& circuit);

}  // namespace qecsched
