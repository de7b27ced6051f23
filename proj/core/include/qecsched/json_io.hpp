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
#include <string>
#include <string_view>
#include <vector>

#include "qecsched/circuit.hpp"
#include "qecsched/code.hpp"
#include "qecsched/layout.hpp"
#include "qecsched/rounds.hpp"
#include "qecsched/scheduler.hpp"

// Serialized documents use 1-based qubit numbers: data d_j is j, ancilla a_i
// is n + i. Vertices stay 0-based.
namespace qecsched::json {

/// { "n": int, "generators": [{ "pauli": "X"|"Z", "qubits": [int] }],
///   "logical_z": [int] (optional) }
std::string code_to_json(const CssCode& code);
CssCode code_from_json(std::string_view text);

/// { "vertices": int, "edges": [[int,int]], "placement": [int],
///   "n": int, "m": int, "coords": [[row,col]] (optional) }
/// `placement[q-1]` is the vertex of qubit q.
std::string layout_to_json(const Layout& layout);
Layout layout_from_json(std::string_view text);

/// Circuit document: basis, n, m, labels, start/end placements and
/// timesteps of {"op":"cnot"|"swap"|"mr","a":int,"d":int|null,"label":[int]|null}.
/// For "swap", "a" and "d" are the two swapped qubits. The layout is
/// embedded when given.
std::string circuit_to_json(const ScheduledCircuit& circuit, const Layout* layout = nullptr);

struct CircuitDocument {
  ScheduledCircuit circuit;
  std::optional<Layout> layout;
};
CircuitDocument circuit_from_json(std::string_view text);

/// Per-step telemetry sidecar: [{"step","situation","cases","tie_break",
/// "measurements","labels_remaining"}].
std::string telemetry_to_json(const std::vector<StepTelemetry>& telemetry);

/// Memory experiment: rounds, segments (circuit schema with "phase"),
/// journal, logical support.
std::string experiment_to_json(const MemoryExperiment& experiment);

}  // namespace qecsched::json
