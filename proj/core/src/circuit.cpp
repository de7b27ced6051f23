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

#include "qecsched/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qecsched {

std::vector<int> action_qubits(const Action& action, int num_data) {
  return std::visit(Overloaded{
                        [&](const CnotCouple& c) { return std::vector<int>{num_data + c.ancilla, c.data}; },
                        [](const Swap& s) { return std::vector<int>{s.q1, s.q2}; },
                        [&](const MeasureReset& m) { return std::vector<int>{num_data + m.ancilla}; },
                    },
                    action);
}

ParityMatrix::ParityMatrix(int num_ancilla, int num_data)
    : cols_(num_data), rows_(static_cast<std::size_t>(num_ancilla), BitRow(static_cast<std::size_t>(num_data))) {}

bool ParityMatrix::is_zero() const {
  return std::none_of(rows_.begin(), rows_.end(), [](const BitRow& r) { return r.any(); });
}

ParityMatrix replay_parity_matrix(const ScheduledCircuit& circuit) {
  ParityMatrix m(circuit.num_ancilla, circuit.num_data);
  std::vector<BitRow> supports;
  supports.reserve(circuit.labels.size());
  for (const auto& l : circuit.labels) supports.push_back(support_bits(l, circuit.num_data));
  for (std::size_t t = 0; t < circuit.timesteps.size(); ++t) {
    for (const auto& action : circuit.timesteps[t].actions) {
      if (const auto* c = std::get_if<CnotCouple>(&action)) {
        m.row(c->ancilla).flip(static_cast<std::size_t>(c->data));
      } else if (const auto* mr = std::get_if<MeasureReset>(&action)) {
        auto& row = m.row(mr->ancilla);
        if (row != supports.at(static_cast<std::size_t>(mr->label))) {
          throw std::logic_error("measurement of a" + std::to_string(mr->ancilla + 1) +
                                 " at timestep " + std::to_string(t) +
                                 " does not match its label");
        }
        row.clear();
      }
    }
  }
  return m;
}

Placement replay_placement(const ScheduledCircuit& circuit) {
  Placement p = circuit.start;
  for (const auto& ts : circuit.timesteps) {
    for (const auto& action : ts.actions) {
      if (const auto* s = std::get_if<Swap>(&action)) p.swap_qubits(s->q1, s->q2);
    }
  }
  return p;
}

CircuitMetrics metrics(const ScheduledCircuit& circuit) {
  CircuitMetrics out;
  for (const auto& ts : circuit.timesteps) {
    if (std::any_of(ts.actions.begin(), ts.actions.end(), is_two_qubit)) ++out.depth;
  }
  out.volume = out.depth * (circuit.num_data + circuit.num_ancilla);
  out.ancilla_volume = out.depth * circuit.num_ancilla;
  return out;
}

}  // namespace qecsched
