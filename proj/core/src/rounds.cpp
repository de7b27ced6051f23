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

#include "qecsched/rounds.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qecsched {

ScheduledCircuit reverse_sequence(const ScheduledCircuit& circuit) {
  if (!replay_parity_matrix(circuit).is_zero()) {
    throw std::invalid_argument("reverse_sequence needs a circuit with no open parity cycles");
  }
  const std::size_t count = circuit.timesteps.size();

  // (reversed timestep, ancilla) -> label measured after that coupling.
  std::map<std::pair<std::size_t, int>, int> closing;
  std::vector<std::optional<std::size_t>> cycle_start(static_cast<std::size_t>(circuit.num_ancilla));
  for (std::size_t t = 0; t < count; ++t) {
    for (const auto& action : circuit.timesteps[t].actions) {
      if (const auto* c = std::get_if<CnotCouple>(&action)) {
        auto& start = cycle_start[static_cast<std::size_t>(c->ancilla)];
        if (!start) start = t;
      } else if (const auto* m = std::get_if<MeasureReset>(&action)) {
        auto& start = cycle_start[static_cast<std::size_t>(m->ancilla)];
        closing[{count - 1 - *start, m->ancilla}] = m->label;
        start.reset();
      }
    }
  }

  ScheduledCircuit out;
  out.basis = circuit.basis;
  out.num_data = circuit.num_data;
  out.num_ancilla = circuit.num_ancilla;
  out.labels = circuit.labels;
  out.start = circuit.end;
  out.end = circuit.start;
  out.timesteps.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    const auto& src = circuit.timesteps[count - 1 - r];
    Timestep ts;
    for (const auto& action : src.actions) {
      if (!is_two_qubit(action)) continue;
      ts.actions.push_back(action);
      if (const auto* c = std::get_if<CnotCouple>(&action)) {
        if (auto it = closing.find({r, c->ancilla}); it != closing.end()) {
          ts.actions.emplace_back(MeasureReset{c->ancilla, it->second});
        }
      }
    }
    out.timesteps.push_back(std::move(ts));
  }
  return out;
}

ScheduledCircuit basis_swapped(const ScheduledCircuit& circuit) {
  ScheduledCircuit out = circuit;
  out.basis = dual(circuit.basis);
  for (auto& l : out.labels) l.pauli = dual(l.pauli);
  return out;
}

const char* to_string(RoundPhase phase) {
  switch (phase) {
    case RoundPhase::kZForward: return "Z";
    case RoundPhase::kZReverse: return "Z_inv";
    case RoundPhase::kXForward: return "X";
    case RoundPhase::kXReverse: return "X_inv";
  }
  return "?";
}

Round compose_round(const ScheduledCircuit& z_run, const std::optional<ScheduledCircuit>& x_run) {
  Round round;
  round.segments.push_back({RoundPhase::kZForward, z_run});
  round.segments.push_back({RoundPhase::kZReverse, reverse_sequence(z_run)});
  if (x_run) {
    round.segments.push_back({RoundPhase::kXForward, *x_run});
    round.segments.push_back({RoundPhase::kXReverse, reverse_sequence(*x_run)});
  }
  for (std::size_t k = 0; k < round.segments.size(); ++k) {
    const auto& seg = round.segments[k].circuit;
    if (replay_placement(seg) != seg.end) {
      throw std::invalid_argument("segment end placement does not match its SWAP stream");
    }
    if (k > 0 && round.segments[k - 1].circuit.end != seg.start) {
      throw std::invalid_argument(std::string("placement mismatch entering segment ") +
                                  to_string(round.segments[k].phase));
    }
  }
  if (round.segments.back().circuit.end != round.segments.front().circuit.start) {
    throw std::invalid_argument("round does not return to its initial placement");
  }
  return round;
}

const std::vector<GeneratorLabel>& MemoryExperiment::labels(PauliType basis) const {
  return basis == PauliType::kZ ? z_labels_ : x_labels_;
}

int default_rounds(int distance) { return std::max(1, distance - 2); }

MemoryExperiment build_memory_experiment(const CssCode& code, const Layout& layout, int rounds,
                                         const ScheduleOptions& options) {
  if (rounds < 1) throw std::invalid_argument("memory experiment needs at least one round");
  if (const auto report = validate_css(code); !report) {
    throw std::invalid_argument("invalid CSS code: " + report.violation + " (" + report.detail + ")");
  }
  check_layout(layout);
  if (layout.num_data != code.num_data) {
    throw std::invalid_argument("layout data-qubit count differs from the code");
  }

  MemoryExperiment exp;
  exp.code = code;
  exp.layout = layout;
  exp.rounds = rounds;
  exp.logical_support = code.logical_z;
  exp.z_labels_ = code.generators_of(PauliType::kZ);
  exp.x_labels_ = code.generators_of(PauliType::kX);

  auto z_run = schedule(layout.graph, layout.placement, exp.z_labels_, layout.num_data,
                        layout.num_ancilla, options)
                   .circuit;
  std::optional<ScheduledCircuit> x_run;
  if (!exp.x_labels_.empty()) {
    // S_Z * S_Z^-1 returns every qubit to z_run.start.
    x_run = schedule(layout.graph, z_run.start, exp.x_labels_, layout.num_data,
                     layout.num_ancilla, options)
                .circuit;
  }
  exp.round = compose_round(z_run, x_run);

  for (int r = 0; r < rounds; ++r) {
    for (const auto& seg : exp.round.segments) {
      for (const auto& ts : seg.circuit.timesteps) {
        for (const auto& action : ts.actions) {
          if (const auto* m = std::get_if<MeasureReset>(&action)) {
            exp.journal.push_back({seg.circuit.basis, m->label, m->ancilla, r, seg.phase});
          }
        }
      }
    }
  }
  return exp;
}

}  // namespace qecsched
