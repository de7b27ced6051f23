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

#include "qecsched/verifier.hpp"

#include <map>
#include <random>

#include "qecsched/scheduler.hpp"
#include "qecsched/stim_sim.hpp"
#include "qecsched/tableau.hpp"

namespace qecsched {

FrameMismatch::FrameMismatch(std::size_t measurement, BitRow frame, BitRow expected)
    : std::runtime_error("parity frame mismatch at measurement " + std::to_string(measurement)),
      measurement_(measurement),
      frame_(std::move(frame)),
      expected_(std::move(expected)) {}

std::vector<std::uint8_t> gf2_parity_check(const ScheduledCircuit& circuit,
                                           std::span<const std::uint8_t> input_bits) {
  const int n = circuit.num_data;
  if (static_cast<int>(input_bits.size()) != n) {
    throw std::invalid_argument("input bit vector must have one entry per data qubit");
  }
  std::vector<BitRow> frames(static_cast<std::size_t>(n + circuit.num_ancilla), BitRow(static_cast<std::size_t>(n)));
  for (int j = 0; j < n; ++j) frames[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(j));

  std::vector<std::uint8_t> outcomes;
  for (const auto& ts : circuit.timesteps) {
    for (const auto& action : ts.actions) {
      if (const auto* c = std::get_if<CnotCouple>(&action)) {
        // In the run's own basis the ancilla observable picks up the data
        // observable; data frames are unchanged.
        frames[static_cast<std::size_t>(n + c->ancilla)] ^= frames[static_cast<std::size_t>(c->data)];
      } else if (const auto* m = std::get_if<MeasureReset>(&action)) {
        auto& frame = frames[static_cast<std::size_t>(n + m->ancilla)];
        const auto expected = support_bits(circuit.labels.at(static_cast<std::size_t>(m->label)), n);
        if (frame != expected) throw FrameMismatch(outcomes.size(), frame, expected);
        std::uint8_t parity = 0;
        for (int j : frame.set_bits()) parity ^= input_bits[static_cast<std::size_t>(j)] & 1U;
        outcomes.push_back(parity);
        frame.clear();
      }
      // SWAPs relabel locations only; frames follow qubit labels.
    }
  }
  return outcomes;
}

StructureReport check_structure(const ScheduledCircuit& circuit, const ConnectivityGraph& graph,
                                bool replay_matrix) {
  auto fail = [](std::string what, std::optional<std::size_t> t) {
    StructureReport r;
    r.ok = false;
    r.failure = std::move(what);
    r.timestep = t;
    return r;
  };
  const int n = circuit.num_data;
  const int total = n + circuit.num_ancilla;
  if (graph.vertex_count() != total || circuit.start.size() != total) {
    return fail("graph/placement size differs from n+m", std::nullopt);
  }
  Placement place = circuit.start;
  std::vector<int> measured(circuit.labels.size(), 0);
  for (std::size_t t = 0; t < circuit.timesteps.size(); ++t) {
    const auto& ts = circuit.timesteps[t];
    try {
      check_disjoint_supports(ts, n);
    } catch (const std::logic_error& e) {
      return fail(e.what(), t);
    }
    for (const auto& action : ts.actions) {
      if (is_two_qubit(action)) {
        const auto qs = action_qubits(action, n);
        for (int q : qs) {
          if (q < 0 || q >= total) return fail("qubit id out of range", t);
        }
        if (!graph.adjacent(place.vertex_of(qs[0]), place.vertex_of(qs[1]))) {
          return fail("two-qubit action on non-adjacent vertices", t);
        }
      }
      if (const auto* s = std::get_if<Swap>(&action)) place.swap_qubits(s->q1, s->q2);
      if (const auto* m = std::get_if<MeasureReset>(&action)) {
        if (m->label < 0 || static_cast<std::size_t>(m->label) >= measured.size()) {
          return fail("measurement refers to an unknown label", t);
        }
        ++measured[static_cast<std::size_t>(m->label)];
      }
    }
  }
  for (std::size_t l = 0; l < measured.size(); ++l) {
    if (measured[l] != 1) {
      return fail("label " + std::to_string(l) + " measured " + std::to_string(measured[l]) + " times",
                  std::nullopt);
    }
  }
  if (replay_matrix) {
    try {
      if (!replay_parity_matrix(circuit).is_zero()) {
        return fail("parity matrix not zero at the end", std::nullopt);
      }
    } catch (const std::logic_error& e) {
      return fail(e.what(), std::nullopt);
    }
  }
  if (place != circuit.end) return fail("recorded end placement differs from SWAP replay", std::nullopt);
  return {};
}

namespace {

TableauReport tableau_fail(std::string what, std::optional<std::size_t> idx) {
  TableauReport r;
  r.ok = false;
  r.failure = std::move(what);
  r.journal_index = idx;
  return r;
}

// Data-qubit vertices of a label under a placement.
std::vector<int> label_vertices(const GeneratorLabel& label, const Placement& place) {
  std::vector<int> vs;
  for (int q : label.qubits) vs.push_back(place.vertex_of(q));
  return vs;
}

struct RunOutcome {
  std::optional<std::string> failure;
  std::optional<std::size_t> index;
};

// Runs one single-basis segment on the tableau. When `strict`, Z outcomes
// must be deterministic zeros and repeated labels must agree with `last`.
RunOutcome run_segment(Tableau& t, const ScheduledCircuit& circ, Placement& place,
                       std::mt19937_64& rng, bool strict, std::map<int, std::uint8_t>& last,
                       std::size_t& journal, std::vector<std::uint8_t>* outcomes,
                       const std::vector<std::uint8_t>* input = nullptr) {
  const int n = circ.num_data;
  for (const auto& ts : circ.timesteps) {
    for (const auto& action : ts.actions) {
      if (const auto* c = std::get_if<CnotCouple>(&action)) {
        const int va = place.vertex_of(n + c->ancilla);
        const int vd = place.vertex_of(c->data);
        if (circ.basis == PauliType::kZ) {
          t.cx(vd, va);
        } else {
          t.cx(va, vd);
        }
      } else if (const auto* s = std::get_if<Swap>(&action)) {
        t.swap(place.vertex_of(s->q1), place.vertex_of(s->q2));
        place.swap_qubits(s->q1, s->q2);
      } else if (const auto* m = std::get_if<MeasureReset>(&action)) {
        const int va = place.vertex_of(n + m->ancilla);
        const auto peek = circ.basis == PauliType::kZ ? t.peek_z(va) : t.peek_x(va);
        const bool bit = circ.basis == PauliType::kZ ? t.measure_z(va, rng) : t.measure_x(va, rng);
        if (strict && input) {
          std::uint8_t parity = 0;
          for (int q : circ.labels.at(static_cast<std::size_t>(m->label)).qubits) {
            parity ^= (*input)[static_cast<std::size_t>(q)];
          }
          if (!peek || *peek != (parity != 0)) {
            return {std::string("outcome differs from the parity of the prepared data"), journal};
          }
        } else if (strict) {
          auto it = last.find(m->label);
          if (circ.basis == PauliType::kZ && (!peek || *peek)) {
            return {std::string("Z check outcome is not a deterministic 0"), journal};
          }
          if (it != last.end() && (!peek || *peek != (it->second != 0))) {
            return {std::string("repeated measurement of a label disagrees"), journal};
          }
        }
        last[m->label] = bit;
        if (outcomes) outcomes->push_back(bit);
        if (circ.basis == PauliType::kZ) {
          if (bit) t.x(va);
        } else {
          if (bit) t.z(va);
        }
        ++journal;
      }
    }
  }
  return {};
}

}  // namespace

TableauReport tableau_verify(const ScheduledCircuit& circuit, const ConnectivityGraph& graph) {
  if (const auto s = check_structure(circuit, graph, false); !s) return tableau_fail(s.failure, std::nullopt);
  const int n = circuit.num_data;
  const int m = circuit.num_ancilla;
  if (n + m > kTableauQubitLimit) return tableau_fail("too many qubits for the tableau oracle", std::nullopt);

  TableauReport report;
  std::mt19937_64 rng(0x5eed);
  const bool z_run = circuit.basis == PauliType::kZ;

  // Determinism pass: |0...0> data, ancillas prepared in the run's basis.
  {
    Tableau t(n + m);
    Placement place = circuit.start;
    if (!z_run) {
      for (int a = 0; a < m; ++a) t.h(place.vertex_of(n + a));
    }
    std::map<int, std::uint8_t> last;
    std::size_t journal = 0;
    if (auto r = run_segment(t, circuit, place, rng, true, last, journal, &report.outcomes); r.failure) {
      return tableau_fail(*r.failure, r.index);
    }
    for (std::size_t l = 0; l < circuit.labels.size(); ++l) {
      const auto vs = label_vertices(circuit.labels[l], place);
      const auto value = z_run ? t.peek_z_product(vs) : t.peek_x_product(vs);
      const auto it = last.find(static_cast<int>(l));
      if (!value || it == last.end() || *value != (it->second != 0)) {
        return tableau_fail("check " + std::to_string(l) + " does not stabilize the data afterwards",
                            std::nullopt);
      }
    }
  }

  // Input passes: data in a random eigenstate of the run's basis; every
  // outcome must be the parity of its label over that input.
  for (int trial = 0; trial < 4; ++trial) {
    Tableau t(n + m);
    Placement place = circuit.start;
    std::vector<std::uint8_t> input(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
      input[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(rng() & 1U);
      const int v = place.vertex_of(q);
      if (input[static_cast<std::size_t>(q)]) t.x(v);
      if (!z_run) t.h(v);
    }
    if (!z_run) {
      for (int a = 0; a < m; ++a) t.h(place.vertex_of(n + a));
    }
    std::map<int, std::uint8_t> last;
    std::size_t journal = 0;
    if (auto r = run_segment(t, circuit, place, rng, true, last, journal, nullptr, &input); r.failure) {
      return tableau_fail(*r.failure, r.index);
    }
  }

  // Disentanglement pass: data in the conjugate basis, where any stray
  // coupling leaves the ancilla entangled.
  {
    Tableau t(n + m);
    Placement place = circuit.start;
    if (z_run) {
      for (int q = 0; q < n; ++q) t.h(place.vertex_of(q));
    } else {
      for (int a = 0; a < m; ++a) t.h(place.vertex_of(n + a));
    }
    std::map<int, std::uint8_t> last;
    std::size_t journal = 0;
    run_segment(t, circuit, place, rng, false, last, journal, nullptr);
    for (int a = 0; a < m; ++a) {
      if (!t.is_product_qubit(place.vertex_of(n + a))) {
        return tableau_fail("ancilla a" + std::to_string(a + 1) + " is left entangled with data",
                            std::nullopt);
      }
    }
  }
  return report;
}

TableauReport tableau_verify(const MemoryExperiment& exp) {
  const int n = exp.layout.num_data;
  const int m = exp.layout.num_ancilla;
  if (n + m > kTableauQubitLimit) return tableau_fail("too many qubits for the tableau oracle", std::nullopt);
  for (const auto& seg : exp.round.segments) {
    if (const auto s = check_structure(seg.circuit, exp.layout.graph, false); !s) {
      return tableau_fail(std::string(to_string(seg.phase)) + ": " + s.failure, std::nullopt);
    }
  }

  TableauReport report;
  std::mt19937_64 rng(0x5eed);
  Tableau t(n + m);
  std::map<int, std::uint8_t> last_z;
  std::map<int, std::uint8_t> last_x;
  std::size_t journal = 0;
  PauliType ancilla_basis = PauliType::kZ;
  Placement place = exp.round.segments.front().circuit.start;
  for (int r = 0; r < exp.rounds; ++r) {
    for (const auto& seg : exp.round.segments) {
      if (seg.circuit.basis != ancilla_basis) {
        for (int a = 0; a < m; ++a) {
          const int v = place.vertex_of(n + a);
          if (seg.circuit.basis == PauliType::kX) {
            t.reset_x(v, rng);
          } else {
            t.reset_z(v, rng);
          }
        }
        ancilla_basis = seg.circuit.basis;
      }
      auto& last = seg.circuit.basis == PauliType::kZ ? last_z : last_x;
      if (auto out = run_segment(t, seg.circuit, place, rng, true, last, journal, &report.outcomes);
          out.failure) {
        return tableau_fail(*out.failure, out.index);
      }
    }
  }
  for (PauliType basis : {PauliType::kZ, PauliType::kX}) {
    const auto& labels = exp.labels(basis);
    const auto& last = basis == PauliType::kZ ? last_z : last_x;
    for (std::size_t l = 0; l < labels.size(); ++l) {
      const auto vs = label_vertices(labels[l], place);
      const auto value = basis == PauliType::kZ ? t.peek_z_product(vs) : t.peek_x_product(vs);
      const auto it = last.find(static_cast<int>(l));
      if (!value || it == last.end() || *value != (it->second != 0)) {
        return tableau_fail(std::string(1, to_char(basis)) + " check " + std::to_string(l) +
                                " does not stabilize the final state",
                            std::nullopt);
      }
    }
  }
  std::vector<int> logical;
  for (int q : exp.logical_support) logical.push_back(place.vertex_of(q));
  if (const auto value = t.peek_z_product(logical); !value || *value) {
    return tableau_fail("logical Z is not a deterministic +1", std::nullopt);
  }
  for (int a = 0; a < m; ++a) {
    if (!t.is_product_qubit(place.vertex_of(n + a))) {
      return tableau_fail("ancilla a" + std::to_string(a + 1) + " is left entangled", std::nullopt);
    }
  }
  return report;
}

EmissionCheck check_noiseless_emission(const std::string& stim_text, int shots, std::uint64_t seed) {
  const auto program = parse_stim(stim_text);
  const auto samples = sample_stim(program, shots, seed);
  EmissionCheck check;
  check.shots = shots;
  check.detectors = program.num_detectors;
  check.nonzero_detectors = samples.nonzero_detector_count();
  check.observable_flips = samples.observable_flip_count();
  check.ok = check.nonzero_detectors == 0 && check.observable_flips == 0;
  return check;
}

RunVerification verify_run(const ScheduledCircuit& circuit, const ConnectivityGraph& graph,
                           std::uint64_t seed, int random_inputs, int exhaustive_limit) {
  RunVerification out;
  out.structure = check_structure(circuit, graph);
  if (!out.structure.ok) {
    out.ok = false;
    return out;
  }
  const int n = circuit.num_data;
  std::vector<BitRow> supports;
  std::vector<int> order;
  for (const auto& ts : circuit.timesteps) {
    for (const auto& action : ts.actions) {
      if (const auto* m = std::get_if<MeasureReset>(&action)) order.push_back(m->label);
    }
  }
  for (const auto& l : circuit.labels) supports.push_back(support_bits(l, n));

  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n));
  auto check_input = [&]() {
    try {
      const auto outcomes = gf2_parity_check(circuit, bits);
      for (std::size_t k = 0; k < order.size(); ++k) {
        std::uint8_t parity = 0;
        for (int j : supports[static_cast<std::size_t>(order[k])].set_bits()) parity ^= bits[static_cast<std::size_t>(j)];
        if (outcomes[k] != parity) {
          out.gf2_failure = "outcome of measurement " + std::to_string(k) + " differs from its label parity";
          return false;
        }
      }
    } catch (const FrameMismatch& e) {
      out.gf2_failure = std::string(e.what()) + " at measurement " + std::to_string(e.measurement());
      return false;
    }
    ++out.gf2_inputs;
    return true;
  };

  bool gf2_ok = true;
  if (n <= exhaustive_limit) {
    out.gf2_exhaustive = true;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n) && gf2_ok; ++x) {
      for (int j = 0; j < n; ++j) bits[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>((x >> j) & 1U);
      gf2_ok = check_input();
    }
  } else {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < random_inputs && gf2_ok; ++k) {
      for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1U);
      gf2_ok = check_input();
    }
  }
  out.ok = gf2_ok;

  if (n + circuit.num_ancilla <= kTableauQubitLimit) {
    out.tableau_ran = true;
    out.tableau = tableau_verify(circuit, graph);
    out.ok = out.ok && out.tableau.ok;
  }
  return out;
}

}  // namespace qecsched
