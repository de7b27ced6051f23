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

#include "qecsched/json_io.hpp"

#include <stdexcept>

#include "json.hpp"

namespace qecsched::json {

using nlohmann::json;

namespace {

json labels_json(const std::vector<GeneratorLabel>& labels) {
  json out = json::array();
  for (const auto& l : labels) {
    json qs = json::array();
    for (int q : l.qubits) qs.push_back(q + 1);
    out.push_back({{"pauli", std::string(1, to_char(l.pauli))}, {"qubits", qs}});
  }
  return out;
}

std::vector<GeneratorLabel> labels_from(const json& arr, int n) {
  std::vector<GeneratorLabel> out;
  for (const auto& g : arr) {
    GeneratorLabel label;
    label.pauli = parse_pauli(g.at("pauli").get<std::string>());
    for (int q : g.at("qubits").get<std::vector<int>>()) {
      if (q < 1 || q > n) throw std::invalid_argument("generator qubit out of range 1..n");
      label.qubits.push_back(q - 1);
    }
    out.push_back(std::move(label));
  }
  return out;
}

json placement_json(const Placement& p) { return p.to_vertex(); }

json circuit_body(const ScheduledCircuit& c) {
  const int n = c.num_data;
  json steps = json::array();
  for (const auto& ts : c.timesteps) {
    json actions = json::array();
    for (const auto& action : ts.actions) {
      std::visit(Overloaded{
                     [&](const CnotCouple& x) {
                       actions.push_back({{"op", "cnot"}, {"a", n + x.ancilla + 1}, {"d", x.data + 1}, {"label", nullptr}});
                     },
                     [&](const Swap& x) {
                       actions.push_back({{"op", "swap"}, {"a", x.q1 + 1}, {"d", x.q2 + 1}, {"label", nullptr}});
                     },
                     [&](const MeasureReset& x) {
                       json qs = json::array();
                       for (int q : c.labels.at(static_cast<std::size_t>(x.label)).qubits) qs.push_back(q + 1);
                       actions.push_back({{"op", "mr"}, {"a", n + x.ancilla + 1}, {"d", nullptr}, {"label", qs}});
                     },
                 },
                 action);
    }
    steps.push_back(std::move(actions));
  }
  return {{"basis", std::string(1, to_char(c.basis))},
          {"n", c.num_data},
          {"m", c.num_ancilla},
          {"labels", labels_json(c.labels)},
          {"start_placement", placement_json(c.start)},
          {"end_placement", placement_json(c.end)},
          {"timesteps", std::move(steps)}};
}

json layout_body(const Layout& layout) {
  json edges = json::array();
  for (auto [u, v] : layout.graph.edges()) edges.push_back({u, v});
  json out = {{"vertices", layout.graph.vertex_count()},
              {"edges", edges},
              {"placement", layout.placement.to_vertex()},
              {"n", layout.num_data},
              {"m", layout.num_ancilla}};
  if (!layout.coords.empty()) {
    json coords = json::array();
    for (const auto& c : layout.coords) coords.push_back({c.row, c.col});
    out["coords"] = std::move(coords);
  }
  return out;
}

Layout layout_from(const json& j) {
  Layout layout;
  const int vertices = j.at("vertices").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  layout.graph = ConnectivityGraph(vertices, edges);
  layout.placement = Placement(j.at("placement").get<std::vector<int>>());
  if (layout.placement.size() != vertices) throw std::invalid_argument("placement must list every vertex");
  layout.num_data = j.value("n", -1);
  layout.num_ancilla = j.value("m", -1);
  if (layout.num_data < 0 && layout.num_ancilla < 0) {
    throw std::invalid_argument("layout document needs \"n\" or \"m\"");
  }
  if (layout.num_data < 0) layout.num_data = vertices - layout.num_ancilla;
  if (layout.num_ancilla < 0) layout.num_ancilla = vertices - layout.num_data;
  if (j.contains("coords")) {
    for (const auto& c : j.at("coords")) layout.coords.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  }
  check_layout(layout);
  return layout;
}

template <class F>
auto parse_or_throw(std::string_view text, F&& f) {
  try {
    return f(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed JSON document: ") + e.what());
  }
}

}  // namespace

std::string code_to_json(const CssCode& code) {
  json out = {{"n", code.num_data}, {"generators", labels_json(code.generators)}};
  if (!code.logical_z.empty()) {
    json lz = json::array();
    for (int q : code.logical_z) lz.push_back(q + 1);
    out["logical_z"] = lz;
  }
  return out.dump(2);
}

CssCode code_from_json(std::string_view text) {
  return parse_or_throw(text, [](const json& j) {
    const int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("code needs n >= 1");
    auto gens = labels_from(j.at("generators"), n);
    std::vector<int> logical;
    if (j.contains("logical_z")) {
      for (int q : j.at("logical_z").get<std::vector<int>>()) logical.push_back(q - 1);
    }
    return make_css_code(n, std::move(gens), std::move(logical));
  });
}

std::string layout_to_json(const Layout& layout) { return layout_body(layout).dump(2); }

Layout layout_from_json(std::string_view text) {
  return parse_or_throw(text, [](const json& j) { return layout_from(j); });
}

std::string circuit_to_json(const ScheduledCircuit& circuit, const Layout* layout) {
  json out = circuit_body(circuit);
  if (layout) out["layout"] = layout_body(*layout);
  return out.dump(1);
}

CircuitDocument circuit_from_json(std::string_view text) {
  return parse_or_throw(text, [](const json& j) {
    CircuitDocument doc;
    auto& c = doc.circuit;
    c.basis = parse_pauli(j.at("basis").get<std::string>());
    c.num_data = j.at("n").get<int>();
    c.num_ancilla = j.at("m").get<int>();
    const int n = c.num_data;
    const int total = n + c.num_ancilla;
    c.labels = labels_from(j.at("labels"), n);
    c.start = Placement(j.at("start_placement").get<std::vector<int>>());
    c.end = Placement(j.at("end_placement").get<std::vector<int>>());
    auto qubit = [total](const json& v) {
      const int q = v.get<int>();
      if (q < 1 || q > total) throw std::invalid_argument("qubit number out of range");
      return q - 1;
    };
    auto ancilla = [&](const json& v) {
      const int q = qubit(v);
      if (q < n) throw std::invalid_argument("expected an ancilla qubit number");
      return q - n;
    };
    for (const auto& step : j.at("timesteps")) {
      Timestep ts;
      for (const auto& a : step) {
        const auto op = a.at("op").get<std::string>();
        if (op == "cnot") {
          const int d = qubit(a.at("d"));
          if (d >= n) throw std::invalid_argument("cnot target must be a data qubit");
          ts.actions.emplace_back(CnotCouple{ancilla(a.at("a")), d});
        } else if (op == "swap") {
          ts.actions.emplace_back(Swap{qubit(a.at("a")), qubit(a.at("d"))});
        } else if (op == "mr") {
          std::vector<int> qs;
          for (int q : a.at("label").get<std::vector<int>>()) qs.push_back(q - 1);
          int idx = -1;
          for (std::size_t l = 0; l < c.labels.size(); ++l) {
            if (c.labels[l].qubits == qs) {
              idx = static_cast<int>(l);
              break;
            }
          }
          if (idx < 0) throw std::invalid_argument("measurement label not in the label list");
          ts.actions.emplace_back(MeasureReset{ancilla(a.at("a")), idx});
        } else {
          throw std::invalid_argument("unknown op '" + op + "'");
        }
      }
      c.timesteps.push_back(std::move(ts));
    }
    if (j.contains("layout")) doc.layout = layout_from(j.at("layout"));
    return doc;
  });
}

std::string telemetry_to_json(const std::vector<StepTelemetry>& telemetry) {
  json out = json::array();
  for (std::size_t s = 0; s < telemetry.size(); ++s) {
    const auto& t = telemetry[s];
    json cases = json::array();
    for (auto c : t.cases) cases.push_back(static_cast<int>(c));
    out.push_back({{"step", s},
                   {"situation", std::string(1, to_char(t.situation))},
                   {"cases", cases},
                   {"tie_break", t.tie_break},
                   {"measurements", t.measurements},
                   {"labels_remaining", t.labels_remaining}});
  }
  return out.dump(1);
}

std::string experiment_to_json(const MemoryExperiment& exp) {
  json segments = json::array();
  for (const auto& seg : exp.round.segments) {
    json body = circuit_body(seg.circuit);
    body["phase"] = to_string(seg.phase);
    segments.push_back(std::move(body));
  }
  json journal = json::array();
  for (const auto& e : exp.journal) {
    journal.push_back({{"basis", std::string(1, to_char(e.basis))},
                       {"label", e.label},
                       {"ancilla", exp.layout.num_data + e.ancilla + 1},
                       {"round", e.round},
                       {"phase", to_string(e.phase)}});
  }
  json logical = json::array();
  for (int q : exp.logical_support) logical.push_back(q + 1);
  return json{{"rounds", exp.rounds},
              {"code", json::parse(code_to_json(exp.code))},
              {"layout", layout_body(exp.layout)},
              {"round", segments},
              {"journal", journal},
              {"logical_support", logical}}
      .dump(1);
}

}  // namespace qecsched::json
