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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "properties.hpp"
#include "qecsched/code.hpp"
#include "qecsched/layout.hpp"
#include "qecsched/scheduler.hpp"

using namespace qecsched;

namespace {

using Z = PauliType;

Layout golden_layout() {
  // Path d1 - a1 - d2 - d3.
  std::vector<int> order{0, 3, 1, 2};
  return line_layout_ordered(3, 1, order);
}

Timestep step(std::vector<Action> actions) { return Timestep{std::move(actions)}; }

}  // namespace

TEST(Schedule, GoldenTrace) {
  const auto layout = golden_layout();
  const auto code = repetition_code(3);
  const auto r = schedule(layout, code.generators);
  const std::vector<Timestep> expected{
      step({CnotCouple{0, 0}}),
      step({CnotCouple{0, 1}, MeasureReset{0, 0}}),
      step({CnotCouple{0, 1}}),
      step({Swap{3, 1}}),
      step({CnotCouple{0, 2}, MeasureReset{0, 1}}),
  };
  EXPECT_EQ(r.circuit.timesteps, expected);
  EXPECT_EQ(r.raw_circuit.timesteps, expected);
  std::vector<AncillaCase> cases;
  for (const auto& t : r.telemetry) cases.push_back(t.cases.at(0));
  EXPECT_EQ(cases, (std::vector<AncillaCase>{AncillaCase::kCase3, AncillaCase::kCase1, AncillaCase::kCase3,
                                             AncillaCase::kCase2, AncillaCase::kCase1}));
  EXPECT_TRUE(r.final_matrix.is_zero());
  EXPECT_EQ(r.circuit.end.to_vertex(), (std::vector<int>{0, 1, 3, 2}));
}

TEST(Schedule, EmptyLabelList) {
  const auto layout = line_layout(3, 1);
  const auto r = schedule(layout, {});
  EXPECT_TRUE(r.circuit.timesteps.empty());
  EXPECT_EQ(r.circuit.end, layout.placement);
}

TEST(Schedule, InterleavedTwoAncillasDepthTwo) {
  // d1 a1 d2 a2 d3
  std::vector<int> order{0, 3, 1, 4, 2};
  const auto layout = line_layout_ordered(3, 2, order);
  const auto r = schedule(layout, repetition_code(3).generators);
  EXPECT_EQ(metrics(r.circuit).depth, 2);
  std::vector<int> measured_by(2, -1);
  for (const auto& ts : r.circuit.timesteps) {
    for (const auto& a : ts.actions) {
      if (const auto* m = std::get_if<MeasureReset>(&a)) measured_by[m->label] = m->ancilla;
    }
  }
  EXPECT_EQ(measured_by, (std::vector<int>{0, 1}));
}

TEST(Schedule, RejectsMixedBases) {
  const auto layout = line_layout(3, 1);
  std::vector<GeneratorLabel> mixed{{Z::kZ, {0, 1}}, {Z::kX, {1, 2}}};
  EXPECT_THROW(schedule(layout, mixed), std::invalid_argument);
}

TEST(Schedule, GuardExceededCarriesTelemetry) {
  const auto layout = line_layout(5, 1);
  ScheduleOptions opts;
  opts.guard = 2;
  try {
    schedule(layout, repetition_code(5).generators, opts);
    FAIL() << "expected GuardExceeded";
  } catch (const GuardExceeded& e) {
    EXPECT_EQ(e.step(), 2);
    EXPECT_EQ(e.telemetry().size(), 2u);
  }
}

TEST(Schedule, Deterministic) {
  const auto layout = surround_layout(5, 7);
  const auto labels = rotated_surface_code(5).generators_of(Z::kZ);
  const auto a = schedule(layout, labels);
  const auto b = schedule(layout, labels);
  EXPECT_EQ(a.circuit, b.circuit);
}

TEST(DecideActions, GoldenStates) {
  const auto layout = golden_layout();
  SchedulerState s(layout.graph, layout.placement, repetition_code(3).generators, 3, 1);
  // t = 0: d1 and d2 are both candidates, the smaller index wins.
  s.reset_usage();
  EXPECT_EQ(s.get_candidate(0), 0);
  auto d0 = s.decide_actions();
  EXPECT_EQ(d0.cases, (std::vector<AncillaCase>{AncillaCase::kCase3}));

  // t = 1: row (1,0,0), a1 next to d2 -> Case 1 and the first label completes.
  EXPECT_TRUE(s.matrix().get(0, 0));
  auto d1 = s.decide_actions();
  EXPECT_EQ(d1.cases, (std::vector<AncillaCase>{AncillaCase::kCase1}));
  EXPECT_EQ(d1.actions, step({CnotCouple{0, 1}, MeasureReset{0, 0}}));
  EXPECT_EQ(s.remaining(), (std::vector<int>{1}));
  EXPECT_FALSE(s.matrix().row(0).any());

  auto d2 = s.decide_actions();
  EXPECT_EQ(d2.cases, (std::vector<AncillaCase>{AncillaCase::kCase3}));

  // t = 3: Case 2 toward d3 through the vertex holding d2.
  s.reset_usage();
  EXPECT_FALSE(s.get_candidate(0).has_value());
  const auto target = s.get_target(0);
  ASSERT_TRUE(target.has_value());
  EXPECT_EQ(target->data, 2);
  EXPECT_EQ(target->neighbor, 1);
  auto d3 = s.decide_actions();
  EXPECT_EQ(d3.cases, (std::vector<AncillaCase>{AncillaCase::kCase2}));
  EXPECT_EQ(d3.actions, step({Swap{3, 1}}));
  EXPECT_FALSE(s.unused(2));  // the first Case-2 target is reserved
  EXPECT_EQ(s.placement().vertex_of(3), 2);
}

TEST(DecideActions, AllCaseFourIsEmpty) {
  // d1 d2 d3 a1: a1 touches only d3, which is in no label.
  const auto layout = line_layout(3, 1);
  std::vector<GeneratorLabel> labels{{Z::kZ, {0, 1}}};
  SchedulerState s(layout.graph, layout.placement, labels, 3, 1);
  auto d = s.decide_actions();
  EXPECT_TRUE(d.actions.actions.empty());
  EXPECT_EQ(d.cases, (std::vector<AncillaCase>{AncillaCase::kCase4}));
}

TEST(GetCandidate, NeighborsAlreadyInRow) {
  std::vector<int> order{0, 3, 1, 2};
  const auto layout = line_layout_ordered(3, 1, order);
  std::vector<GeneratorLabel> labels{{Z::kZ, {0, 1, 2}}};
  SchedulerState s(layout.graph, layout.placement, labels, 3, 1);
  s.decide_actions();  // CNOT d1
  s.decide_actions();  // CNOT d2
  EXPECT_EQ(s.matrix().row(0).popcount(), 2u);
  s.reset_usage();
  EXPECT_FALSE(s.get_candidate(0).has_value());
}

TEST(GetCandidate, NoSupersetLabel) {
  // d1 a1 d5 d2 d3 d4; labels (d1,d2) and (d4,d5).
  std::vector<int> order{0, 5, 4, 1, 2, 3};
  const auto layout = line_layout_ordered(5, 1, order);
  std::vector<GeneratorLabel> labels{{Z::kZ, {0, 1}}, {Z::kZ, {3, 4}}};
  SchedulerState s(layout.graph, layout.placement, labels, 5, 1);
  auto first = s.decide_actions();
  EXPECT_EQ(first.actions, step({CnotCouple{0, 0}}));
  s.reset_usage();
  EXPECT_FALSE(s.get_candidate(0).has_value());
  // Oracle: no label contains {d1, d5}.
  for (const auto& l : labels) {
    const bool sup = std::count(l.qubits.begin(), l.qubits.end(), 0) && std::count(l.qubits.begin(), l.qubits.end(), 4);
    EXPECT_FALSE(sup);
  }
}

TEST(GetTarget, LargestLabelWins) {
  // a1 d2 d1 d3 d4; labels (d2,d3) then (d1,d2,d4).
  std::vector<int> order{4, 1, 0, 2, 3};
  const auto layout = line_layout_ordered(4, 1, order);
  std::vector<GeneratorLabel> labels{{Z::kZ, {1, 2}}, {Z::kZ, {0, 1, 3}}};
  SchedulerState s(layout.graph, layout.placement, labels, 4, 1);
  auto first = s.decide_actions();
  ASSERT_EQ(first.actions, step({CnotCouple{0, 1}}));
  s.reset_usage();
  const auto t = s.get_target(0);
  ASSERT_TRUE(t.has_value());
  EXPECT_EQ(t->data, 0);
  EXPECT_EQ(t->neighbor, 1);  // d2 sits between a1 and d1
}

TEST(GetTarget, AllNeighborsUsed) {
  std::vector<int> order{0, 3, 1, 2};
  const auto layout = line_layout_ordered(3, 1, order);
  SchedulerState s(layout.graph, layout.placement, {{Z::kZ, {1, 2}}}, 3, 1);
  s.decide_actions();  // CNOT d2
  s.reset_usage();
  ASSERT_TRUE(s.get_target(0).has_value());
  s.mark_used(0);
  s.mark_used(1);
  EXPECT_FALSE(s.get_target(0).has_value());
}

TEST(TieBreak, MovesTowardNearestLabel) {
  // d1 d2 d3 d4 a1; the only label (d1,d2) is 3 hops from a1.
  const auto layout = line_layout(4, 1);
  SchedulerState s(layout.graph, layout.placement, {{Z::kZ, {0, 1}}}, 4, 1);
  auto d = s.decide_actions();
  ASSERT_TRUE(d.actions.actions.empty());
  const auto cands = s.tie_break_candidates();
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].distance, 3);
  EXPECT_EQ(cands[0].data, 1);
  EXPECT_EQ(cands[0].ancilla, 0);

  const auto fw = oracle::floyd_warshall(5, layout.graph.edges());
  const int target_vertex = s.placement().vertex_of(1);
  const int before = fw[s.placement().vertex_of(4)][target_vertex];
  auto ts = s.tie_break();
  ASSERT_GE(ts.actions.size(), 1u);
  EXPECT_EQ(ts.actions[0], (Action{Swap{4, 3}}));
  // After the ancilla-side SWAP alone the ancilla is one hop closer.
  EXPECT_EQ(fw[3][target_vertex], before - 1);
  // The data-side SWAP of the same candidate follows.
  ASSERT_EQ(ts.actions.size(), 2u);
  EXPECT_EQ(ts.actions[1], (Action{Swap{1, 2}}));
  for (int q : {1, 2, 3, 4}) EXPECT_FALSE(s.unused(q));
  check_disjoint_supports(ts, 4);
}

TEST(TieBreak, AdjacentPairIssuesNoSwap) {
  // d1 a1 d2: ancilla already adjacent to d1.
  std::vector<int> order{0, 2, 1};
  const auto layout = line_layout_ordered(2, 1, order);
  SchedulerState s(layout.graph, layout.placement, {{Z::kZ, {0, 1}}}, 2, 1);
  const auto cands = s.tie_break_candidates();
  ASSERT_EQ(cands.size(), 1u);
  EXPECT_EQ(cands[0].distance, 1);
  EXPECT_TRUE(s.tie_break().actions.empty());
}

TEST(TieBreak, SortedByDistance) {
  // d1 .. d6 a1; the far label is listed first.
  const auto layout = line_layout(6, 1);
  std::vector<GeneratorLabel> labels{{Z::kZ, {0, 1}}, {Z::kZ, {3, 4}}};
  SchedulerState s(layout.graph, layout.placement, labels, 6, 1);
  const auto cands = s.tie_break_candidates();
  ASSERT_EQ(cands.size(), 2u);
  EXPECT_EQ(cands[0].label, 1);
  EXPECT_EQ(cands[0].distance, 2);
  EXPECT_EQ(cands[1].label, 0);
  EXPECT_EQ(cands[1].distance, 5);
}

TEST(Situation, Classification) {
  EXPECT_EQ(situation_of(CaseFlags{true, true, true, true}), Situation::kA);
  EXPECT_EQ(situation_of(CaseFlags{false, false, false, true}), Situation::kB);
  EXPECT_EQ(situation_of(CaseFlags{false, true, false, true}), Situation::kC);
  EXPECT_EQ(situation_of(CaseFlags{false, true, false, false}), Situation::kC);
  EXPECT_EQ(situation_of(CaseFlags{false, false, true, false}), Situation::kD);
  EXPECT_THROW(situation_of(CaseFlags{false, false, false, false}), std::invalid_argument);
}

TEST(Situation, PartitionOfAllPatterns) {
  int counts[4] = {0, 0, 0, 0};
  for (int mask = 1; mask < 16; ++mask) {
    CaseFlags f{(mask & 1) != 0, (mask & 2) != 0, (mask & 4) != 0, (mask & 8) != 0};
    const auto s = situation_of(f);
    ++counts[static_cast<int>(s)];
    // Definitions checked independently.
    if (f[0]) EXPECT_EQ(s, Situation::kA);
    else if (!f[1] && !f[2]) EXPECT_EQ(s, Situation::kB);
    else if (f[1] && !f[2]) EXPECT_EQ(s, Situation::kC);
    else EXPECT_EQ(s, Situation::kD);
  }
  EXPECT_EQ(counts[0], 8);
  EXPECT_EQ(counts[1], 1);
  EXPECT_EQ(counts[2], 2);
  EXPECT_EQ(counts[3], 4);
}

namespace {

ScheduledCircuit hand_circuit(std::vector<Timestep> steps, int n, int m, std::vector<GeneratorLabel> labels) {
  ScheduledCircuit c;
  c.num_data = n;
  c.num_ancilla = m;
  c.labels = std::move(labels);
  c.timesteps = std::move(steps);
  std::vector<int> id(static_cast<std::size_t>(n + m));
  for (int q = 0; q < n + m; ++q) id[static_cast<std::size_t>(q)] = q;
  c.start = Placement(id);
  c.end = replay_placement(c);
  return c;
}

}  // namespace

TEST(RemoveUnnecessaryGates, TrailingCnotRemoved) {
  auto c = hand_circuit({step({CnotCouple{0, 0}}), step({CnotCouple{0, 1}, MeasureReset{0, 0}}),
                         step({CnotCouple{1, 3}})},
                        4, 2, {{Z::kZ, {0, 1}}});
  const auto m = replay_parity_matrix(c);
  EXPECT_TRUE(m.get(1, 3));
  const auto cleaned = remove_unnecessary_gates(c, m);
  EXPECT_EQ(cleaned.timesteps.size(), 2u);
  EXPECT_TRUE(replay_parity_matrix(cleaned).is_zero());
  EXPECT_EQ(metrics(cleaned).depth, 2);
}

TEST(RemoveUnnecessaryGates, ZeroMatrixLeavesCircuit) {
  const auto r = schedule(golden_layout(), repetition_code(3).generators, {std::nullopt, false});
  EXPECT_EQ(remove_unnecessary_gates(r.raw_circuit, r.final_matrix), r.raw_circuit);
}

TEST(RemoveUnnecessaryGates, ConsecutiveSwapPairCancels) {
  auto c = hand_circuit({step({CnotCouple{0, 0}}), step({CnotCouple{0, 1}, MeasureReset{0, 0}}),
                         step({Swap{3, 1}}), step({Swap{3, 1}})},
                        3, 1, {{Z::kZ, {0, 1}}});
  const auto cleaned = remove_unnecessary_gates(c, replay_parity_matrix(c));
  EXPECT_EQ(cleaned.timesteps.size(), 2u);
  EXPECT_EQ(cleaned.end, c.end);

  // An action on one of the qubits in between blocks the cancellation.
  auto blocked = hand_circuit({step({Swap{3, 1}}), step({CnotCouple{0, 0}}), step({Swap{1, 3}}),
                               step({CnotCouple{0, 1}, MeasureReset{0, 0}})},
                              3, 1, {{Z::kZ, {0, 1}}});
  EXPECT_EQ(remove_unnecessary_gates(blocked, replay_parity_matrix(blocked)).timesteps.size(), 4u);
}

TEST(RemoveUnnecessaryGates, Idempotent) {
  for (int m : {1, 3, 7, 12}) {
    const auto layout = surround_layout(3, m);
    const auto r = schedule(layout, rotated_surface_code(3).generators_of(Z::kX));
    const auto once = remove_unnecessary_gates(r.raw_circuit, r.final_matrix);
    EXPECT_EQ(once, r.circuit);
    EXPECT_EQ(remove_unnecessary_gates(once, replay_parity_matrix(once)), once);
    EXPECT_EQ(remove_unnecessary_gates(once, r.final_matrix), once);
  }
}

struct MatrixCase {
  std::string family;
  int d;
  int m;
};

void PrintTo(const MatrixCase& c, std::ostream* os) { *os << c.family << " d=" << c.d << " m=" << c.m; }

class TerminationMatrix : public ::testing::TestWithParam<MatrixCase> {};

TEST_P(TerminationMatrix, CompletesWithInvariants) {
  const auto& p = GetParam();
  const bool surface = p.family == "surface";
  const auto code = surface ? rotated_surface_code(p.d) : repetition_code(p.d);
  const auto layout = surface ? surround_layout(p.d, p.m) : line_layout(p.d, p.m);
  for (auto basis : {Z::kZ, Z::kX}) {
    const auto labels = code.generators_of(basis);
    if (labels.empty()) continue;
    const auto r = schedule(layout, labels);
    EXPECT_EQ(props::check_completed_run(r.circuit), "");
    EXPECT_EQ(props::check_telemetry(r.telemetry, static_cast<int>(labels.size())), "");
    EXPECT_EQ(replay_parity_matrix(r.raw_circuit), r.final_matrix);
    EXPECT_EQ(r.telemetry.size(), r.raw_circuit.timesteps.size());
    // Measurement exactness is enforced by the replay; removed gates only
    // come after each ancilla's last measurement.
    EXPECT_LE(metrics(r.circuit).depth, metrics(r.raw_circuit).depth);
  }
}

std::vector<MatrixCase> termination_cases() {
  std::vector<MatrixCase> out;
  for (int d = 2; d <= 15; ++d)
    for (int m = 1; m <= 4; ++m) out.push_back({"repetition", d, m});
  for (int d : {3, 5, 7})
    for (int m = 1; m <= 4 * d; ++m) out.push_back({"surface", d, m});
  return out;
}

INSTANTIATE_TEST_SUITE_P(All, TerminationMatrix, ::testing::ValuesIn(termination_cases()),
                         [](const auto& info) {
                           return info.param.family + "_d" + std::to_string(info.param.d) + "_m" +
                                  std::to_string(info.param.m);
                         });
