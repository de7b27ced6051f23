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

#include "json.hpp"
#include "qecsched/json_io.hpp"
#include "qecsched/scheduler.hpp"

using namespace qecsched;

TEST(Json, CodeRoundTrip) {
  const auto code = rotated_surface_code(5);
  const auto back = json::code_from_json(json::code_to_json(code));
  EXPECT_EQ(back.num_data, code.num_data);
  EXPECT_EQ(back.generators, code.generators);
  EXPECT_EQ(back.logical_z, code.logical_z);
}

TEST(Json, CodeSchemaIsOneBased) {
  const auto doc = nlohmann::json::parse(json::code_to_json(repetition_code(3)));
  EXPECT_EQ(doc["n"], 3);
  EXPECT_EQ(doc["generators"][0]["pauli"], "Z");
  EXPECT_EQ(doc["generators"][0]["qubits"], nlohmann::json({1, 2}));
  EXPECT_THROW(json::code_from_json(R"({"n":2,"generators":[{"pauli":"Z","qubits":[0,1]}]})"),
               std::invalid_argument);
  EXPECT_THROW(json::code_from_json("{not json"), std::invalid_argument);
}

TEST(Json, LayoutRoundTrip) {
  const auto layout = surround_layout(3, 6);
  const auto back = json::layout_from_json(json::layout_to_json(layout));
  EXPECT_EQ(back.graph.edges(), layout.graph.edges());
  EXPECT_EQ(back.placement, layout.placement);
  EXPECT_EQ(back.coords, layout.coords);
  EXPECT_EQ(back.num_data, 9);
  // Minimal schema from the outside.
  const auto custom = json::layout_from_json(R"({"vertices":3,"edges":[[0,1],[1,2]],"placement":[0,2,1],"m":1})");
  EXPECT_EQ(custom.num_data, 2);
  EXPECT_EQ(custom.placement.vertex_of(2), 1);
}

TEST(Json, CircuitRoundTrip) {
  const auto layout = surround_layout(3, 5);
  const auto r = schedule(layout, rotated_surface_code(3).generators_of(PauliType::kX));
  const auto text = json::circuit_to_json(r.circuit, &layout);
  const auto doc = json::circuit_from_json(text);
  EXPECT_EQ(doc.circuit, r.circuit);
  ASSERT_TRUE(doc.layout.has_value());
  EXPECT_EQ(doc.layout->graph.edges(), layout.graph.edges());
}

TEST(Json, GoldenCircuitEncoding) {
  std::vector<int> order{0, 3, 1, 2};
  const auto r = schedule(line_layout_ordered(3, 1, order), repetition_code(3).generators);
  const auto doc = nlohmann::json::parse(json::circuit_to_json(r.circuit));
  const auto& t = doc["timesteps"];
  ASSERT_EQ(t.size(), 5u);
  EXPECT_EQ(t[0][0], nlohmann::json({{"op", "cnot"}, {"a", 4}, {"d", 1}, {"label", nullptr}}));
  EXPECT_EQ(t[1][1], nlohmann::json({{"op", "mr"}, {"a", 4}, {"d", nullptr}, {"label", {1, 2}}}));
  EXPECT_EQ(t[3][0], nlohmann::json({{"op", "swap"}, {"a", 4}, {"d", 2}, {"label", nullptr}}));
}

TEST(Json, TelemetrySidecar) {
  std::vector<int> order{0, 3, 1, 2};
  const auto r = schedule(line_layout_ordered(3, 1, order), repetition_code(3).generators);
  const auto doc = nlohmann::json::parse(json::telemetry_to_json(r.telemetry));
  ASSERT_EQ(doc.size(), 5u);
  std::string tags;
  for (const auto& s : doc) tags += s["situation"].get<std::string>();
  EXPECT_EQ(tags, "DADCA");
  EXPECT_EQ(doc[1]["labels_remaining"], 1);
}

TEST(Json, RejectsUnknownOp) {
  EXPECT_THROW(json::circuit_from_json(R"({"basis":"Z","n":2,"m":1,"labels":[],"start_placement":[0,1,2],
      "end_placement":[0,1,2],"timesteps":[[{"op":"h","a":3,"d":null,"label":null}]]})"),
               std::invalid_argument);
}
