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

#include "qecsched/stim_emit.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace qecsched {

void check_noise(const NoiseParams& noise) {
  for (double p : {noise.p_cnot, noise.p_swap, noise.p_idle}) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise rates must lie in [0, 1]");
  }
}

namespace {

std::string format_probability(double p) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), p);
  if (ec != std::errc{}) throw std::runtime_error("could not format probability");
  return std::string(buf, end);
}

// Walks every measurement in emission order.
template <class F>
void for_each_measurement(const MemoryExperiment& exp, F&& f) {
  for (int r = 0; r < exp.rounds; ++r) {
    for (const auto& seg : exp.round.segments) {
      for (const auto& ts : seg.circuit.timesteps) {
        for (const auto& action : ts.actions) {
          if (const auto* m = std::get_if<MeasureReset>(&action)) f(seg.circuit.basis, *m);
        }
      }
    }
  }
}

}  // namespace

DetectorPlan plan_detectors(const MemoryExperiment& exp) {
  DetectorPlan plan;
  const auto& z_labels = exp.labels(PauliType::kZ);
  const auto& x_labels = exp.labels(PauliType::kX);
  plan.z_chains.resize(z_labels.size());
  plan.x_chains.resize(x_labels.size());

  std::size_t journal_pos = 0;
  int record = 0;
  for_each_measurement(exp, [&](PauliType basis, const MeasureReset& m) {
    if (journal_pos >= exp.journal.size() || exp.journal[journal_pos].basis != basis ||
        exp.journal[journal_pos].label != m.label) {
      throw std::invalid_argument("measurement journal out of sync with the circuit");
    }
    ++journal_pos;
    auto& chains = basis == PauliType::kZ ? plan.z_chains : plan.x_chains;
    if (m.label < 0 || static_cast<std::size_t>(m.label) >= chains.size()) {
      throw std::invalid_argument("journal refers to an unknown label");
    }
    auto& chain = chains[static_cast<std::size_t>(m.label)];
    if (chain.empty()) {
      if (basis == PauliType::kZ) plan.detectors.push_back({record});
    } else {
      plan.detectors.push_back({chain.back(), record});
    }
    chain.push_back(record);
    ++record;
  });
  if (journal_pos != exp.journal.size()) {
    throw std::invalid_argument("journal has entries the circuit never measures");
  }
  for (const auto& chains : {&plan.z_chains, &plan.x_chains}) {
    for (const auto& chain : *chains) {
      if (chain.size() != static_cast<std::size_t>(2 * exp.rounds)) {
        throw std::invalid_argument("every label must be measured twice per round");
      }
    }
  }

  const int data_base = record;
  for (std::size_t l = 0; l < z_labels.size(); ++l) {
    std::vector<int> det{plan.z_chains[l].back()};
    for (int q : z_labels[l].qubits) det.push_back(data_base + q);
    plan.detectors.push_back(std::move(det));
  }
  for (int q : exp.logical_support) plan.observable.push_back(data_base + q);
  plan.measurement_count = data_base + exp.code.num_data;
  return plan;
}

std::string emit_noisy_circuit(const MemoryExperiment& exp, const NoiseParams& noise) {
  check_noise(noise);
  const auto plan = plan_detectors(exp);
  const int n = exp.layout.num_data;
  const int m = exp.layout.num_ancilla;
  const int total = n + m;

  std::ostringstream out;
  out << "# syndrome-measurement memory experiment\n";
  out << "# n=" << n << " m=" << m << " rounds=" << exp.rounds << " p_cnot="
      << format_probability(noise.p_cnot) << " p_swap=" << format_probability(noise.p_swap)
      << " p_idle=" << format_probability(noise.p_idle) << "\n";
  const auto& start = exp.round.segments.front().circuit.start;
  for (int v = 0; v < total; ++v) {
    const int q = start.qubit_at(v);
    out << "# vertex " << v << ": " << (q < n ? "d" : "a") << (q < n ? q + 1 : q - n + 1);
    if (!exp.layout.coords.empty()) {
      const auto& c = exp.layout.coords[static_cast<std::size_t>(v)];
      out << " at (" << c.row << ", " << c.col << ")";
    }
    out << "\n";
  }
  if (!exp.layout.coords.empty()) {
    for (int v = 0; v < total; ++v) {
      const auto& c = exp.layout.coords[static_cast<std::size_t>(v)];
      out << "QUBIT_COORDS(" << c.row << ", " << c.col << ") " << v << "\n";
    }
  }

  auto emit_targets = [&out](const std::vector<int>& vs) {
    for (int v : vs) out << ' ' << v;
    out << '\n';
  };
  std::vector<int> all(static_cast<std::size_t>(total));
  for (int v = 0; v < total; ++v) all[static_cast<std::size_t>(v)] = v;
  out << "R";
  emit_targets(all);
  out << "TICK\n";

  std::size_t detector = 0;
  int record = 0;
  auto emit_detector = [&](const std::vector<int>& recs, int current_count) {
    out << "DETECTOR";
    for (int r : recs) out << " rec[" << (r - current_count) << "]";
    out << '\n';
  };

  PauliType ancilla_basis = PauliType::kZ;
  for (int r = 0; r < exp.rounds; ++r) {
    for (const auto& seg : exp.round.segments) {
      const auto& circ = seg.circuit;
      Placement place = circ.start;
      if (circ.basis != ancilla_basis) {
        std::vector<int> anc;
        for (int a = 0; a < m; ++a) anc.push_back(place.vertex_of(n + a));
        out << (circ.basis == PauliType::kX ? "RX" : "R");
        emit_targets(anc);
        ancilla_basis = circ.basis;
      }
      for (const auto& ts : circ.timesteps) {
        std::vector<char> busy(static_cast<std::size_t>(total), 0);
        std::vector<int> measured;
        for (const auto& action : ts.actions) {
          if (const auto* c = std::get_if<CnotCouple>(&action)) {
            const int va = place.vertex_of(n + c->ancilla);
            const int vd = place.vertex_of(c->data);
            const int control = circ.basis == PauliType::kZ ? vd : va;
            const int target = circ.basis == PauliType::kZ ? va : vd;
            out << "CX " << control << ' ' << target << '\n';
            if (noise.p_cnot > 0) {
              out << "DEPOLARIZE2(" << format_probability(noise.p_cnot) << ") " << control << ' '
                  << target << '\n';
            }
            busy[static_cast<std::size_t>(va)] = busy[static_cast<std::size_t>(vd)] = 1;
          } else if (const auto* s = std::get_if<Swap>(&action)) {
            const int v1 = place.vertex_of(s->q1);
            const int v2 = place.vertex_of(s->q2);
            out << "SWAP " << v1 << ' ' << v2 << '\n';
            if (noise.p_swap > 0) {
              out << "DEPOLARIZE2(" << format_probability(noise.p_swap) << ") " << v1 << ' ' << v2
                  << '\n';
            }
            busy[static_cast<std::size_t>(v1)] = busy[static_cast<std::size_t>(v2)] = 1;
            place.swap_qubits(s->q1, s->q2);
          } else if (const auto* mr = std::get_if<MeasureReset>(&action)) {
            measured.push_back(mr->ancilla);
          }
        }
        if (noise.p_idle > 0) {
          std::vector<int> idle;
          for (int v = 0; v < total; ++v) {
            if (!busy[static_cast<std::size_t>(v)]) idle.push_back(v);
          }
          if (!idle.empty()) {
            out << "DEPOLARIZE1(" << format_probability(noise.p_idle) << ")";
            emit_targets(idle);
          }
        }
        for (int a : measured) {
          out << (circ.basis == PauliType::kX ? "MRX " : "MR ") << place.vertex_of(n + a) << '\n';
          ++record;
          // Chain detectors ending at this record are emitted right after it.
          while (detector < plan.detectors.size() && plan.detectors[detector].back() == record - 1) {
            emit_detector(plan.detectors[detector], record);
            ++detector;
          }
        }
        out << "TICK\n";
      }
    }
  }

  // Noiseless transversal readout in data-qubit order.
  const auto& final_place = exp.round.segments.back().circuit.end;
  std::vector<int> data_vertices;
  for (int q = 0; q < n; ++q) data_vertices.push_back(final_place.vertex_of(q));
  out << "M";
  emit_targets(data_vertices);
  record += n;
  for (; detector < plan.detectors.size(); ++detector) {
    emit_detector(plan.detectors[detector], record);
  }
  out << "OBSERVABLE_INCLUDE(0)";
  for (int r : plan.observable) out << " rec[" << (r - record) << "]";
  out << '\n';
  return out.str();
}

}  // namespace qecsched
