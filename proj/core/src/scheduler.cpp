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

#include "qecsched/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

namespace qecsched {

char to_char(Situation s) {
  switch (s) {
    case Situation::kA: return 'A';
    case Situation::kB: return 'B';
    case Situation::kC: return 'C';
    case Situation::kD: return 'D';
  }
  return '?';
}

CaseFlags case_flags(std::span<const AncillaCase> cases) {
  CaseFlags flags{};
  for (auto c : cases) {
    if (c != AncillaCase::kSkipped) flags[static_cast<std::size_t>(c) - 1] = true;
  }
  return flags;
}

Situation situation_of(const CaseFlags& flags) {
  const auto [s1, s2, s3, s4] = flags;
  if (s1) return Situation::kA;
  if (s3) return Situation::kD;
  if (s2) return Situation::kC;
  if (s4) return Situation::kB;
  throw std::invalid_argument("situation_of: no ancilla was classified");
}

Situation situation_of(std::span<const AncillaCase> cases) {
  return situation_of(case_flags(cases));
}

GuardExceeded::GuardExceeded(long long step, std::vector<StepTelemetry> telemetry)
    : std::runtime_error("scheduler exceeded its step guard at step " + std::to_string(step)),
      step_(step),
      telemetry_(std::move(telemetry)) {}

InternalStall::InternalStall(long long step, std::string detail)
    : std::runtime_error("scheduler stalled at step " + std::to_string(step) + ": " + detail),
      step_(step) {}

SchedulerState::SchedulerState(const ConnectivityGraph& graph, Placement placement,
                               std::vector<GeneratorLabel> labels, int num_data,
                               int num_ancilla)
    : graph_(&graph),
      num_data_(num_data),
      num_ancilla_(num_ancilla),
      matrix_(num_ancilla, num_data),
      placement_(std::move(placement)),
      labels_(std::move(labels)),
      labels_of_data_(static_cast<std::size_t>(num_data)),
      active_(labels_.size(), 1),
      unused_(static_cast<std::size_t>(num_data + num_ancilla), 1) {
  if (num_data < 1 || num_ancilla < 1) {
    throw std::invalid_argument("scheduler needs at least one data and one ancilla qubit");
  }
  if (graph.vertex_count() != num_data + num_ancilla ||
      placement_.size() != num_data + num_ancilla) {
    throw std::invalid_argument("graph and placement must have exactly n+m vertices");
  }
  for (std::size_t l = 0; l < labels_.size(); ++l) {
    const auto& label = labels_[l];
    if (label.pauli != labels_.front().pauli) {
      throw std::invalid_argument("all labels of one run must share a Pauli type");
    }
    if (label.qubits.size() < 2) throw std::invalid_argument("labels need weight >= 2");
    for (int q : label.qubits) {
      if (q < 0 || q >= num_data) throw std::invalid_argument("label qubit out of range");
      labels_of_data_[static_cast<std::size_t>(q)].push_back(static_cast<int>(l));
    }
    label_bits_.push_back(support_bits(label, num_data));
    remaining_.push_back(static_cast<int>(l));
  }
}

void SchedulerState::reset_usage() { std::fill(unused_.begin(), unused_.end(), 1); }

bool SchedulerState::has_superset_label(int ancilla, int data) const {
  const auto& row = matrix_.row(ancilla);
  for (int l : labels_of_data_[static_cast<std::size_t>(data)]) {
    if (active_[static_cast<std::size_t>(l)] && row.is_subset_of(label_bits_[static_cast<std::size_t>(l)])) {
      return true;
    }
  }
  return false;
}

std::optional<int> SchedulerState::get_candidate(int ancilla) const {
  const int vertex = placement_.vertex_of(num_data_ + ancilla);
  std::optional<int> best;
  for (int v : graph_->neighbors(vertex)) {
    const int q = placement_.qubit_at(v);
    if (q >= num_data_ || !unused(q)) continue;
    if (matrix_.get(ancilla, q)) continue;
    if (best && *best < q) continue;
    if (has_superset_label(ancilla, q)) best = q;
  }
  return best;
}

std::optional<SwapTarget> SchedulerState::get_target(int ancilla) const {
  const auto& row = matrix_.row(ancilla);
  const std::size_t have = row.popcount();
  int chosen = -1;
  std::size_t chosen_size = 0;
  for (int l : remaining_) {
    const auto& bits = label_bits_[static_cast<std::size_t>(l)];
    const std::size_t size = labels_[static_cast<std::size_t>(l)].qubits.size();
    if (size > have && row.is_subset_of(bits) && size > chosen_size) {
      chosen = l;
      chosen_size = size;
    }
  }
  if (chosen < 0) return std::nullopt;
  int target = -1;
  for (int q : labels_[static_cast<std::size_t>(chosen)].qubits) {
    if (!row.test(static_cast<std::size_t>(q))) {
      target = q;
      break;
    }
  }
  const int here = placement_.vertex_of(num_data_ + ancilla);
  const int there = placement_.vertex_of(target);
  const int current = graph_->distance(here, there);
  for (int v : graph_->neighbors(here)) {
    const int q = placement_.qubit_at(v);
    if (unused(q) && graph_->distance(v, there) < current) return SwapTarget{q, target};
  }
  return std::nullopt;
}

void SchedulerState::cnot(int ancilla, int data, Timestep& out) {
  auto& row = matrix_.row(ancilla);
  if (row.test(static_cast<std::size_t>(data))) {
    throw std::logic_error("parity entry re-flipped within one measurement cycle");
  }
  row.set(static_cast<std::size_t>(data));
  mark_used(num_data_ + ancilla);
  mark_used(data);
  out.actions.emplace_back(CnotCouple{ancilla, data});

  const std::size_t have = row.popcount();
  for (int l : labels_of_data_[static_cast<std::size_t>(data)]) {
    if (!active_[static_cast<std::size_t>(l)]) continue;
    if (labels_[static_cast<std::size_t>(l)].qubits.size() != have) continue;
    if (row != label_bits_[static_cast<std::size_t>(l)]) continue;
    out.actions.emplace_back(MeasureReset{ancilla, l});
    active_[static_cast<std::size_t>(l)] = 0;
    remaining_.erase(std::find(remaining_.begin(), remaining_.end(), l));
    row.clear();
    break;
  }
}

void SchedulerState::swap(int q1, int q2, Timestep& out) {
  placement_.swap_qubits(q1, q2);
  mark_used(q1);
  mark_used(q2);
  out.actions.emplace_back(Swap{q1, q2});
}

SchedulerState::Decision SchedulerState::decide_actions() {
  reset_usage();
  Decision decision;
  decision.cases.assign(static_cast<std::size_t>(num_ancilla_), AncillaCase::kSkipped);
  bool flag = true;
  for (int i = 0; i < num_ancilla_; ++i) {
    if (!unused(num_data_ + i)) continue;
    const bool cond1 = matrix_.row(i).any();
    const auto candidate = get_candidate(i);
    const bool cond2 = candidate.has_value();
    auto& kind = decision.cases[static_cast<std::size_t>(i)];
    if (cond1 && cond2) {
      kind = AncillaCase::kCase1;
      cnot(i, *candidate, decision.actions);
    } else if (cond1) {
      kind = AncillaCase::kCase2;
      if (const auto target = get_target(i)) {
        swap(num_data_ + i, target->neighbor, decision.actions);
        if (flag) {
          mark_used(target->data);
          flag = false;
        }
      }
    } else if (cond2) {
      kind = AncillaCase::kCase3;
      cnot(i, *candidate, decision.actions);
    } else {
      kind = AncillaCase::kCase4;
    }
  }
  return decision;
}

std::vector<int> SchedulerState::approach_vertices(int q1, int q2) const {
  const int from = placement_.vertex_of(q1);
  const int goal = placement_.vertex_of(q2);
  const int current = graph_->distance(from, goal);
  std::vector<int> out;
  for (int v : graph_->neighbors(from)) {
    if (v == goal) continue;
    if (graph_->distance(v, goal) < current && unused(placement_.qubit_at(v))) out.push_back(v);
  }
  return out;
}

std::vector<TieBreakCandidate> SchedulerState::tie_break_candidates() const {
  std::vector<int> usable;
  for (int i = 0; i < num_ancilla_; ++i) {
    if (!matrix_.row(i).any()) usable.push_back(i);
  }
  std::vector<TieBreakCandidate> out;
  if (usable.empty()) return out;
  for (int l : remaining_) {
    auto data = labels_[static_cast<std::size_t>(l)].qubits;
    std::sort(data.begin(), data.end());
    TieBreakCandidate best{std::numeric_limits<int>::max(), -1, -1, l};
    for (int d : data) {
      for (int a : usable) {
        const int dist = graph_->distance(placement_.vertex_of(d), placement_.vertex_of(num_data_ + a));
        if (dist < best.distance) best = {dist, d, a, l};
      }
    }
    out.push_back(best);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.distance < y.distance;
  });
  return out;
}

Timestep SchedulerState::tie_break() {
  reset_usage();
  Timestep out;
  for (const auto& cand : tie_break_candidates()) {
    const int aq = num_data_ + cand.ancilla;
    if (unused(aq)) {
      const auto vs = approach_vertices(aq, cand.data);
      if (!vs.empty()) swap(aq, placement_.qubit_at(vs.front()), out);
    }
    if (unused(cand.data)) {
      const auto vs = approach_vertices(cand.data, aq);
      if (!vs.empty()) swap(cand.data, placement_.qubit_at(vs.front()), out);
    }
  }
  return out;
}

void check_disjoint_supports(const Timestep& timestep, int num_data) {
  std::vector<int> seen;
  for (const auto& action : timestep.actions) {
    if (!is_two_qubit(action)) continue;
    for (int q : action_qubits(action, num_data)) {
      if (std::find(seen.begin(), seen.end(), q) != seen.end()) {
        throw std::logic_error("qubit " + std::to_string(q) + " used twice in one timestep");
      }
      seen.push_back(q);
    }
  }
  for (const auto& action : timestep.actions) {
    if (const auto* m = std::get_if<MeasureReset>(&action)) {
      if (std::find(seen.begin(), seen.end(), num_data + m->ancilla) == seen.end()) {
        throw std::logic_error("measurement without a coupling gate in its timestep");
      }
    }
  }
}

ScheduleResult schedule(const ConnectivityGraph& graph, const Placement& placement,
                        std::vector<GeneratorLabel> labels, int num_data, int num_ancilla,
                        const ScheduleOptions& options) {
  const PauliType basis = labels.empty() ? PauliType::kZ : labels.front().pauli;
  const long long label_count = static_cast<long long>(labels.size());
  SchedulerState state(graph, placement, std::move(labels), num_data, num_ancilla);

  ScheduleResult result;
  auto& raw = result.raw_circuit;
  raw.basis = basis;
  raw.num_data = num_data;
  raw.num_ancilla = num_ancilla;
  raw.labels = state.labels();
  raw.start = placement;

  const long long guard =
      options.guard.value_or(64LL * (num_data + num_ancilla) * std::max(1LL, label_count));
  if (guard < 1) throw std::invalid_argument("guard must be >= 1");

  long long step = 0;
  while (!state.done()) {
    if (step >= guard) throw GuardExceeded(step, std::move(result.telemetry));
    const std::size_t before = state.remaining().size();
    auto decision = state.decide_actions();
    StepTelemetry tel;
    tel.cases = decision.cases;
    tel.flags = case_flags(decision.cases);
    tel.situation = situation_of(tel.flags);
    Timestep ts = std::move(decision.actions);
    if (ts.actions.empty()) {
      tel.tie_break = true;
      ts = state.tie_break();
      if (ts.actions.empty()) {
        throw InternalStall(step, "no usable ancilla while " + std::to_string(before) +
                                      " labels remain");
      }
    }
    check_disjoint_supports(ts, num_data);
    tel.measurements = static_cast<int>(before - state.remaining().size());
    tel.labels_remaining = static_cast<int>(state.remaining().size());
    result.telemetry.push_back(std::move(tel));
    raw.timesteps.push_back(std::move(ts));
    ++step;
  }
  raw.end = state.placement();
  result.final_matrix = state.matrix();
  result.circuit = options.remove_unnecessary
                       ? remove_unnecessary_gates(raw, result.final_matrix)
                       : raw;
  return result;
}

ScheduleResult schedule(const Layout& layout, std::vector<GeneratorLabel> labels,
                        const ScheduleOptions& options) {
  check_layout(layout);
  return schedule(layout.graph, layout.placement, std::move(labels), layout.num_data,
                  layout.num_ancilla, options);
}

namespace {

struct ActionRef {
  std::size_t timestep;
  std::size_t index;
};

}  // namespace

ScheduledCircuit remove_unnecessary_gates(const ScheduledCircuit& circuit,
                                          const ParityMatrix& final_matrix) {
  // Work on a copy with a tombstone per action.
  std::vector<std::vector<char>> removed(circuit.timesteps.size());
  for (std::size_t t = 0; t < circuit.timesteps.size(); ++t) {
    removed[t].assign(circuit.timesteps[t].actions.size(), 0);
  }

  for (int i = 0; i < final_matrix.rows(); ++i) {
    BitRow pending = final_matrix.row(i);
    if (!pending.any()) continue;
    bool stop = false;
    for (std::size_t t = circuit.timesteps.size(); t-- > 0 && !stop && pending.any();) {
      const auto& actions = circuit.timesteps[t].actions;
      for (std::size_t k = actions.size(); k-- > 0;) {
        if (removed[t][k]) continue;
        if (const auto* m = std::get_if<MeasureReset>(&actions[k]); m && m->ancilla == i) {
          stop = true;
          break;
        }
        const auto* c = std::get_if<CnotCouple>(&actions[k]);
        if (c && c->ancilla == i && pending.test(static_cast<std::size_t>(c->data))) {
          removed[t][k] = 1;
          pending.reset(static_cast<std::size_t>(c->data));
        }
      }
    }
  }

  // Cancel SWAP pairs that are consecutive on both qubits' action streams.
  const int total = circuit.num_data + circuit.num_ancilla;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<ActionRef>> streams(static_cast<std::size_t>(total));
    for (std::size_t t = 0; t < circuit.timesteps.size(); ++t) {
      const auto& actions = circuit.timesteps[t].actions;
      for (std::size_t k = 0; k < actions.size(); ++k) {
        if (removed[t][k]) continue;
        for (int q : action_qubits(actions[k], circuit.num_data)) {
          streams[static_cast<std::size_t>(q)].push_back({t, k});
        }
      }
    }
    auto next_in_stream = [&](int q, ActionRef ref) -> std::optional<ActionRef> {
      const auto& s = streams[static_cast<std::size_t>(q)];
      for (std::size_t p = 0; p + 1 < s.size(); ++p) {
        if (s[p].timestep == ref.timestep && s[p].index == ref.index) return s[p + 1];
      }
      return std::nullopt;
    };
    for (int q = 0; q < total && !changed; ++q) {
      const auto& s = streams[static_cast<std::size_t>(q)];
      for (std::size_t p = 0; p + 1 < s.size(); ++p) {
        const auto& a = circuit.timesteps[s[p].timestep].actions[s[p].index];
        const auto& b = circuit.timesteps[s[p + 1].timestep].actions[s[p + 1].index];
        const auto* sa = std::get_if<Swap>(&a);
        const auto* sb = std::get_if<Swap>(&b);
        if (!sa || !sb) continue;
        const bool same_pair = (sa->q1 == sb->q1 && sa->q2 == sb->q2) ||
                               (sa->q1 == sb->q2 && sa->q2 == sb->q1);
        if (!same_pair) continue;
        const int other = sa->q1 == q ? sa->q2 : sa->q1;
        const auto follow = next_in_stream(other, s[p]);
        if (!follow || follow->timestep != s[p + 1].timestep || follow->index != s[p + 1].index) {
          continue;
        }
        removed[s[p].timestep][s[p].index] = 1;
        removed[s[p + 1].timestep][s[p + 1].index] = 1;
        changed = true;
        break;
      }
    }
  }

  ScheduledCircuit out = circuit;
  out.timesteps.clear();
  for (std::size_t t = 0; t < circuit.timesteps.size(); ++t) {
    Timestep ts;
    for (std::size_t k = 0; k < circuit.timesteps[t].actions.size(); ++k) {
      if (!removed[t][k]) ts.actions.push_back(circuit.timesteps[t].actions[k]);
    }
    if (!ts.actions.empty()) out.timesteps.push_back(std::move(ts));
  }
  return out;
}

}  // namespace qecsched
