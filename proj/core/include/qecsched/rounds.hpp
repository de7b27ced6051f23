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

#include <optional>
#include <vector>

#include "qecsched/circuit.hpp"
#include "qecsched/code.hpp"
#include "qecsched/layout.hpp"
#include "qecsched/scheduler.hpp"

namespace qecsched {

/// Reverses the timestep order. Two-qubit actions are self-inverse and kept;
/// each measurement cycle is re-derived so the ancilla is measured at the
/// (reversed) timestep of the cycle's first coupling. Requires a circuit
/// whose replayed parity matrix ends at zero.
ScheduledCircuit reverse_sequence(const ScheduledCircuit& circuit);

/// Same gate stream with the measurement basis exchanged (for self-dual
/// codes, the reversed Z sequence measures the X checks).
ScheduledCircuit basis_swapped(const ScheduledCircuit& circuit);

enum class RoundPhase : unsigned char { kZForward = 0, kZReverse = 1, kXForward = 2, kXReverse = 3 };

const char* to_string(RoundPhase phase);

struct RoundSegment {
  RoundPhase phase = RoundPhase::kZForward;
  ScheduledCircuit circuit;
};

/// One round: S_Z -> S_Z^-1 -> S_X -> S_X^-1 (X segments absent for codes
/// without X checks).
struct Round {
  std::vector<RoundSegment> segments;
};

/// Concatenates the segments of a round. Throws std::invalid_argument if a
/// segment does not start where the previous one ended or the round does not
/// return to its start placement.
Round compose_round(const ScheduledCircuit& z_run, const std::optional<ScheduledCircuit>& x_run);

struct JournalEntry {
  PauliType basis = PauliType::kZ;
  int label = 0;    // index into that basis' label list
  int ancilla = 0;
  int round = 0;
  RoundPhase phase = RoundPhase::kZForward;
};

/// Repeated rounds of syndrome measurement between a noiseless |0...0>
/// data initialization and a noiseless transversal Z readout.
struct MemoryExperiment {
  CssCode code;
  Layout layout;
  int rounds = 0;
  Round round;
  std::vector<JournalEntry> journal;
  std::vector<int> logical_support;

  /// Labels of one basis as scheduled (index space of JournalEntry::label).
  const std::vector<GeneratorLabel>& labels(PauliType basis) const;

 private:
  friend MemoryExperiment build_memory_experiment(const CssCode&, const Layout&, int,
                                                  const ScheduleOptions&);
  std::vector<GeneratorLabel> z_labels_;
  std::vector<GeneratorLabel> x_labels_;
};

/// Default round count d - 2, clamped to at least 1.
int default_rounds(int distance);

/// Schedules S_Z from the layout's placement and S_X from the placement after
/// S_Z * S_Z^-1, then repeats the round `rounds` times.
MemoryExperiment build_memory_experiment(const CssCode& code, const Layout& layout, int rounds,
                                         const ScheduleOptions& options = {});

}  // namespace qecsched
