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

#include <random>

#include "oracles.hpp"
#include "qecsched/code.hpp"
#include "qecsched/rounds.hpp"
#include "qecsched/scheduler.hpp"
#include "qecsched/tableau.hpp"
#include "qecsched/verifier.hpp"

using namespace qecsched;

namespace {

ScheduledCircuit golden_circuit() {
  std::vector<int> order{0, 3, 1, 2};
  return schedule(line_layout_ordered(3, 1, order), repetition_code(3).generators).circuit;
}

std::vector<std::uint8_t> label_parities(const ScheduledCircuit& c, const std::vector<std::uint8_t>& x) {
  std::vector<std::uint8_t> out;
  for (const auto& ts : c.timesteps)
    for (const auto& a : ts.actions)
      if (const auto* m = std::get_if<MeasureReset>(&a)) {
        std::uint8_t p = 0;
        for (int q : c.labels[m->label].qubits) p ^= x[q];
        out.push_back(p);
      }
  return out;
}

// Direct tableau simulation of a Z run from basis state x; nullopt entries
// mark random outcomes.
std::vector<std::optional<bool>> simulate_z_run(const ScheduledCircuit& c, const std::vector<std::uint8_t>& x) {
  const int n = c.num_data;
  Tableau t(n + c.num_ancilla);
  std::mt19937_64 rng(3);
  for (int q = 0; q < n; ++q)
    if (x[q]) t.x(q);  // qubit-indexed tableau: labels, not vertices
  std::vector<std::optional<bool>> out;
  for (const auto& ts : c.timesteps) {
    for (const auto& a : ts.actions) {
      if (const auto* cn = std::get_if<CnotCouple>(&a)) {
        t.cx(cn->data, n + cn->ancilla);
      } else if (const auto* m = std::get_if<MeasureReset>(&a)) {
        out.push_back(t.peek_z(n + m->ancilla));
        t.reset_z(n + m->ancilla, rng);
      }
    }
  }
  return out;
}

}  // namespace

TEST(Tableau, MatchesStateVectorOnRandomCliffords) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    Tableau t(n);
    oracle::StateVector sv(n);
    std::mt19937_64 mrng(trial);
    for (int g = 0; g < 30; ++g) {
      const int q = static_cast<int>(rng() % n);
      int r = static_cast<int>(rng() % n);
      if (r == q) r = (q + 1) % n;
      switch (rng() % 7) {
        case 0: t.h(q); sv.h(q); break;
        case 1: t.s(q); sv.s(q); break;
        case 2: t.x(q); sv.x(q); break;
        case 3: t.z(q); sv.z(q); break;
        case 4: t.cx(q, r); sv.cx(q, r); break;
        case 5: t.swap(q, r); sv.swap(q, r); break;
        case 6: {
          const double p1 = sv.prob_one(q);
          const auto peek = t.peek_z(q);
          if (p1 < 1e-9 || p1 > 1 - 1e-9) {
            ASSERT_TRUE(peek.has_value());
            ASSERT_EQ(*peek, p1 > 0.5);
          } else {
            ASSERT_NEAR(p1, 0.5, 1e-9);
            ASSERT_FALSE(peek.has_value());
          }
          const bool outcome = t.measure_z(q, mrng);
          sv.collapse(q, outcome);
          break;
        }
      }
    }
    for (int q = 0; q < n; ++q) {
      const double p1 = sv.prob_one(q);
      const auto peek = t.peek_z(q);
      if (p1 < 1e-9 || p1 > 1 - 1e-9) {
        ASSERT_TRUE(peek.has_value());
        EXPECT_EQ(*peek, p1 > 0.5);
      } else {
        EXPECT_FALSE(peek.has_value());
      }
    }
    std::vector<int> all;
    for (int q = 0; q < n; ++q) all.push_back(q);
    const double podd = sv.prob_odd(all);
    const auto prod = t.peek_z_product(all);
    if (podd < 1e-9 || podd > 1 - 1e-9) {
      ASSERT_TRUE(prod.has_value());
      EXPECT_EQ(*prod, podd > 0.5);
    } else {
      EXPECT_FALSE(prod.has_value());
    }
  }
}

TEST(Tableau, ProductQubitDetection) {
  Tableau t(3);
  t.h(0);
  EXPECT_TRUE(t.is_product_qubit(0));
  t.cx(0, 1);
  EXPECT_FALSE(t.is_product_qubit(0));
  EXPECT_FALSE(t.is_product_qubit(1));
  EXPECT_TRUE(t.is_product_qubit(2));
  t.h(2);
  t.s(2);
  EXPECT_TRUE(t.is_product_qubit(2));  // Y eigenstate
  const auto x = t.peek_x(0);
  EXPECT_FALSE(x.has_value());
}

TEST(Gf2ParityCheck, GoldenExamples) {
  const auto c = golden_circuit();
  EXPECT_EQ(gf2_parity_check(c, std::vector<std::uint8_t>{1, 0, 1}), (std::vector<std::uint8_t>{1, 1}));
  EXPECT_EQ(gf2_parity_check(c, std::vector<std::uint8_t>{0, 0, 0}), (std::vector<std::uint8_t>{0, 0}));
  EXPECT_THROW(gf2_parity_check(c, std::vector<std::uint8_t>{0, 0}), std::invalid_argument);
}

TEST(Gf2ParityCheck, SurfaceDistanceThreeExhaustive) {
  const auto layout = surround_layout(3, 6);
  const auto c = schedule(layout, rotated_surface_code(3).generators_of(PauliType::kZ)).circuit;
  for (int x = 0; x < 512; ++x) {
    std::vector<std::uint8_t> bits(9);
    for (int j = 0; j < 9; ++j) bits[j] = (x >> j) & 1;
    const auto got = gf2_parity_check(c, bits);
    ASSERT_EQ(got.size(), 4u);
    ASSERT_EQ(got, label_parities(c, bits));
  }
}

TEST(Gf2ParityCheck, MutationRaisesFrameMismatch) {
  auto c = golden_circuit();
  // Drop the second coupling of the first cycle.
  c.timesteps[1].actions.erase(c.timesteps[1].actions.begin());
  try {
    gf2_parity_check(c, std::vector<std::uint8_t>{0, 0, 0});
    FAIL() << "expected FrameMismatch";
  } catch (const FrameMismatch& e) {
    EXPECT_EQ(e.measurement(), 0u);
    EXPECT_EQ(e.frame().set_bits(), (std::vector<int>{0}));
    EXPECT_EQ(e.expected().set_bits(), (std::vector<int>{0, 1}));
  }
}

TEST(Gf2ParityCheck, LabelsNotLocations) {
  const auto layout = surround_layout(3, 4);
  const auto c = schedule(layout, rotated_surface_code(3).generators_of(PauliType::kZ)).circuit;
  auto permuted = c;
  permuted.timesteps.insert(permuted.timesteps.begin(), Timestep{{Swap{9, 10}, Swap{11, 12}}});
  std::mt19937_64 rng(8);
  for (int k = 0; k < 50; ++k) {
    std::vector<std::uint8_t> bits(9);
    for (auto& b : bits) b = rng() & 1;
    EXPECT_EQ(gf2_parity_check(permuted, bits), gf2_parity_check(c, bits));
  }
}

TEST(OracleAgreement, Gf2AndTableauOnBasisInputs) {
  std::mt19937_64 rng(4);
  for (int d : {3, 5}) {
    for (int m : {1, 2, 3}) {
      const auto layout = line_layout(d, m);
      const auto c = schedule(layout, repetition_code(d).generators).circuit;
      for (int k = 0; k < 8; ++k) {
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(d));
        for (auto& b : bits) b = rng() & 1;
        const auto frames = gf2_parity_check(c, bits);
        const auto sim = simulate_z_run(c, bits);
        ASSERT_EQ(frames.size(), sim.size());
        for (std::size_t i = 0; i < sim.size(); ++i) {
          ASSERT_TRUE(sim[i].has_value());
          EXPECT_EQ(*sim[i], frames[i] != 0);
        }
      }
    }
  }
  for (int m : {1, 4, 11}) {
    const auto layout = surround_layout(3, m);
    const auto c = schedule(layout, rotated_surface_code(3).generators_of(PauliType::kZ)).circuit;
    for (int k = 0; k < 8; ++k) {
      std::vector<std::uint8_t> bits(9);
      for (auto& b : bits) b = rng() & 1;
      const auto frames = gf2_parity_check(c, bits);
      const auto sim = simulate_z_run(c, bits);
      for (std::size_t i = 0; i < sim.size(); ++i) {
        ASSERT_TRUE(sim[i].has_value());
        EXPECT_EQ(*sim[i], frames[i] != 0);
      }
    }
  }
}

TEST(TableauVerify, RepetitionRun) {
  const auto layout = line_layout(3, 1);
  const auto c = schedule(layout, repetition_code(3).generators).circuit;
  const auto r = tableau_verify(c, layout.graph);
  EXPECT_TRUE(r.ok) << r.failure;
  EXPECT_EQ(r.outcomes, (std::vector<std::uint8_t>{0, 0}));
}

TEST(TableauVerify, SurfaceRunsBothBases) {
  for (int m : {1, 2, 6, 12}) {
    const auto layout = surround_layout(3, m);
    for (auto b : {PauliType::kZ, PauliType::kX}) {
      const auto c = schedule(layout, rotated_surface_code(3).generators_of(b)).circuit;
      const auto r = tableau_verify(c, layout.graph);
      EXPECT_TRUE(r.ok) << m << " " << r.failure;
    }
  }
}

TEST(TableauVerify, MemoryExperiment) {
  const auto exp = build_memory_experiment(rotated_surface_code(3), surround_layout(3, 1), 1);
  const auto r = tableau_verify(exp);
  EXPECT_TRUE(r.ok) << r.failure;
  EXPECT_EQ(r.outcomes.size(), exp.journal.size());
  const auto exp2 = build_memory_experiment(rotated_surface_code(5), surround_layout(5, 10), 2);
  EXPECT_TRUE(tableau_verify(exp2).ok);
}

TEST(TableauVerify, RetainedRemovableCnotFailsDisentanglement) {
  int mutants = 0;
  for (int m = 1; m <= 12; ++m) {
    const auto layout = surround_layout(3, m);
    for (auto b : {PauliType::kZ, PauliType::kX}) {
      const auto r = schedule(layout, rotated_surface_code(3).generators_of(b));
      if (r.final_matrix.is_zero()) continue;
      ++mutants;
      const auto report = tableau_verify(r.raw_circuit, layout.graph);
      EXPECT_FALSE(report.ok);
      EXPECT_NE(report.failure.find("entangled"), std::string::npos) << report.failure;
    }
  }
  // Injected mutant on a clean circuit: one extra coupling after the last
  // measurement.
  const auto layout = line_layout(3, 1);
  auto c = schedule(layout, repetition_code(3).generators).circuit;
  const int va = c.end.vertex_of(3);
  const int neighbor = layout.graph.neighbors(va)[0];
  const int data = c.end.qubit_at(neighbor);
  ASSERT_LT(data, 3);
  c.timesteps.push_back(Timestep{{CnotCouple{0, data}}});
  const auto report = tableau_verify(c, layout.graph);
  EXPECT_FALSE(report.ok);
  EXPECT_NE(report.failure.find("entangled"), std::string::npos) << report.failure;
  (void)mutants;
}

TEST(TableauVerify, WrongLabelIsCaught) {
  // Measure-labels swapped: structure passes without the M replay, but the
  // input pass sees wrong parities.
  const auto layout = surround_layout(3, 2);
  auto c = schedule(layout, rotated_surface_code(3).generators_of(PauliType::kZ)).circuit;
  std::vector<MeasureReset*> mrs;
  for (auto& ts : c.timesteps)
    for (auto& a : ts.actions)
      if (auto* m = std::get_if<MeasureReset>(&a)) mrs.push_back(m);
  ASSERT_GE(mrs.size(), 2u);
  std::swap(mrs[0]->label, mrs[1]->label);
  EXPECT_FALSE(tableau_verify(c, layout.graph).ok);
  EXPECT_FALSE(verify_run(c, layout.graph).ok);
}

TEST(VerifyRun, ReportsFields) {
  const auto layout = surround_layout(3, 3);
  const auto c = schedule(layout, rotated_surface_code(3).generators_of(PauliType::kZ)).circuit;
  const auto r = verify_run(c, layout.graph);
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(r.gf2_exhaustive);
  EXPECT_EQ(r.gf2_inputs, 512u);
  EXPECT_TRUE(r.tableau_ran);

  const auto big = surround_layout(5, 3);
  const auto cb = schedule(big, rotated_surface_code(5).generators_of(PauliType::kZ)).circuit;
  const auto rb = verify_run(cb, big.graph, 9, 100);
  EXPECT_TRUE(rb.ok);
  EXPECT_FALSE(rb.gf2_exhaustive);
  EXPECT_EQ(rb.gf2_inputs, 100u);
}

TEST(CheckStructure, NonAdjacentGateRejected) {
  const auto layout = line_layout(3, 1);
  auto c = schedule(layout, repetition_code(3).generators).circuit;
  c.timesteps.insert(c.timesteps.begin(), Timestep{{Swap{0, 2}}});
  c.end = replay_placement(c);
  const auto r = check_structure(c, layout.graph);
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.timestep.has_value());
  EXPECT_EQ(*r.timestep, 0u);
}
