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

#include <string>
#include <vector>

#include "qecsched/rounds.hpp"

namespace qecsched {

/// Depolarizing rates for the circuit-level noise model.
struct NoiseParams {
  double p_cnot = 0.0;
  double p_swap = 0.0;
  double p_idle = 0.0;

  bool noiseless() const { return p_cnot == 0.0 && p_swap == 0.0 && p_idle == 0.0; }
};

/// Throws std::invalid_argument unless every rate is within [0, 1].
void check_noise(const NoiseParams& noise);

/// Detector wiring over the chronological measurement record.
///
/// Record indices are absolute (0-based) in emission order: all ancilla
/// measurements of the experiment first, then the n final data readouts.
struct DetectorPlan {
  /// records[basis][label] = chronological record indices of that label.
  std::vector<std::vector<int>> z_chains;
  std::vector<std::vector<int>> x_chains;
  /// Each detector is a list of absolute record indices.
  std::vector<std::vector<int>> detectors;
  std::vector<int> observable;
  int measurement_count = 0;
};

/// Builds the detector plan from a memory experiment's journal.
///
/// Z chains start with a single-record detector, X chains at their second
/// record; consecutive records of one label are compared; each Z label's
/// last record is compared against the final data readout of its support.
/// Throws std::invalid_argument if the journal violates these chain rules.
DetectorPlan plan_detectors(const MemoryExperiment& experiment);

/// Renders the experiment as a Stim circuit (R/RX/MR/MRX/M, CX, SWAP,
/// DEPOLARIZE1/2, DETECTOR, OBSERVABLE_INCLUDE). Deterministic output.
std::string emit_noisy_circuit(const MemoryExperiment& experiment, const NoiseParams& noise);

}  // namespace qecsched
