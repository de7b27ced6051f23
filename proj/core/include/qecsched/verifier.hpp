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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecsched/circuit.hpp"
#include "qecsched/rounds.hpp"
#include "qecsched/stim_emit.hpp"

namespace qecsched {

/// An ancilla's accumulated parity frame differs from the label it reports.
class FrameMismatch : public std::runtime_error {
 public:
  FrameMismatch(std::size_t measurement, BitRow frame, BitRow expected);
  std::size_t measurement() const { return measurement_; }
  const BitRow& frame() const { return frame_; }
  const BitRow& expected() const { return expected_; }

 private:
  std::size_t measurement_;
  BitRow frame_;
  BitRow expected_;
};

/// Propagates GF(2) parity frames (tracked per qubit label, not location)
/// through the circuit and returns the predicted outcome of each
/// measurement for the given data input bits. Throws FrameMismatch when a
/// measured frame is not its label's indicator vector.
std::vector<std::uint8_t> gf2_parity_check(const ScheduledCircuit& circuit,
                                           std::span<const std::uint8_t> input_bits);

struct StructureReport {
  bool ok = true;
  std::string failure;
  std::optional<std::size_t> timestep;
  explicit operator bool() const { return ok; }
};

/// Replays placements and checks: two-qubit actions on adjacent vertices,
/// disjoint supports per timestep, measurement exactness, every label
/// measured exactly once, final M zero, recorded end placement.
/// Disjoint supports, adjacency at issue time, each label measured once, end
/// placement. With `replay_matrix`, also requires every measurement to match
/// its label's parity row and M = 0 at the end.
StructureReport check_structure(const ScheduledCircuit& circuit, const ConnectivityGraph& graph,
                                bool replay_matrix = true);

/// Largest circuit the tableau oracle accepts.
inline constexpr int kTableauQubitLimit = 64;

struct TableauReport {
  bool ok = true;
  std::string failure;
  /// Index into the measurement journal (or run measurement order) of the
  /// first offending measurement, when applicable.
  std::optional<std::size_t> journal_index;
  /// Outcomes observed in the determinism pass.
  std::vector<std::uint8_t> outcomes;
  explicit operator bool() const { return ok; }
};

/// Simulates a single-basis run at vertex level. Checks that outcomes are
/// deterministic where theory requires (|0...0> input, and random eigenstates
/// of the run's basis where each outcome must equal its label's parity), that
/// every ancilla ends disentangled, and that the run's checks stabilize the
/// data.
TableauReport tableau_verify(const ScheduledCircuit& circuit, const ConnectivityGraph& graph);

/// Same checks over a whole noiseless memory experiment, plus a
/// deterministic logical observable.
TableauReport tableau_verify(const MemoryExperiment& experiment);

/// Samples emitted noiseless Stim text and reports whether any detector or
/// observable ever fired.
struct EmissionCheck {
  bool ok = true;
  long long nonzero_detectors = 0;
  long long observable_flips = 0;
  int detectors = 0;
  int shots = 0;
};
EmissionCheck check_noiseless_emission(const std::string& stim_text, int shots, std::uint64_t seed);

struct RunVerification {
  bool ok = true;
  StructureReport structure;
  /// First GF(2) failure, empty when none.
  std::string gf2_failure;
  std::size_t gf2_inputs = 0;
  bool gf2_exhaustive = false;
  bool tableau_ran = false;
  TableauReport tableau;
  explicit operator bool() const { return ok; }
};

/// Structure check, GF(2) frames over all 2^n inputs when n <= exhaustive_limit
/// (otherwise `random_inputs` seeded inputs), and the tableau when n+m fits.
RunVerification verify_run(const ScheduledCircuit& circuit, const ConnectivityGraph& graph,
                           std::uint64_t seed = 1, int random_inputs = 100,
                           int exhaustive_limit = 10);

}  // namespace qecsched
