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

#include "qecsched/code.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qecsched {

char to_char(PauliType p) { return p == PauliType::kZ ? 'Z' : 'X'; }

PauliType parse_pauli(std::string_view s) {
  if (s == "Z" || s == "z") return PauliType::kZ;
  if (s == "X" || s == "x") return PauliType::kX;
  throw std::invalid_argument("unknown Pauli type '" + std::string(s) + "'");
}

BitRow support_bits(const GeneratorLabel& label, int num_data) {
  BitRow row(static_cast<std::size_t>(num_data));
  for (int q : label.qubits) row.set(static_cast<std::size_t>(q));
  return row;
}

std::vector<GeneratorLabel> CssCode::generators_of(PauliType p) const {
  std::vector<GeneratorLabel> out;
  for (const auto& g : generators) {
    if (g.pauli == p) out.push_back(g);
  }
  return out;
}

std::size_t CssCode::count_of(PauliType p) const {
  return static_cast<std::size_t>(std::count_if(
      generators.begin(), generators.end(),
      [p](const GeneratorLabel& g) { return g.pauli == p; }));
}

CssCode make_css_code(int num_data, std::vector<GeneratorLabel> generators,
                      std::vector<int> logical_z) {
  std::stable_sort(generators.begin(), generators.end(),
                   [](const GeneratorLabel& a, const GeneratorLabel& b) {
                     return a.pauli < b.pauli;
                   });
  return CssCode{num_data, std::move(generators), std::move(logical_z)};
}

CssCode repetition_code(int d) {
  if (d < 2) throw std::invalid_argument("repetition code needs d >= 2");
  std::vector<GeneratorLabel> gens;
  for (int i = 0; i + 1 < d; ++i) gens.push_back({PauliType::kZ, {i, i + 1}});
  return make_css_code(d, std::move(gens), {0});
}

CssCode rotated_surface_code(int d) {
  if (d < 3 || d % 2 == 0) {
    throw std::invalid_argument("rotated surface code needs odd d >= 3");
  }
  auto cell = [d](int r, int c) { return r * d + c; };
  std::vector<GeneratorLabel> gens;
  // Walk every face of the extended lattice in row-major order; face (i, j)
  // covers cells (i..i+1, j..j+1) clipped to the grid.
  for (int i = -1; i <= d - 1; ++i) {
    for (int j = -1; j <= d - 1; ++j) {
      std::vector<int> qubits;
      for (int r = i; r <= i + 1; ++r) {
        for (int c = j; c <= j + 1; ++c) {
          if (r >= 0 && r < d && c >= 0 && c < d) qubits.push_back(cell(r, c));
        }
      }
      const bool z_type = ((i + j) % 2 + 2) % 2 == 0;
      const PauliType pauli = z_type ? PauliType::kZ : PauliType::kX;
      if (qubits.size() == 4) {
        gens.push_back({pauli, std::move(qubits)});
      } else if (qubits.size() == 2) {
        const bool top_bottom = (i == -1 || i == d - 1);
        if (top_bottom && pauli == PauliType::kX) gens.push_back({pauli, std::move(qubits)});
        if (!top_bottom && pauli == PauliType::kZ) gens.push_back({pauli, std::move(qubits)});
      }
    }
  }
  std::vector<int> logical;
  for (int c = 0; c < d; ++c) logical.push_back(cell(0, c));
  return make_css_code(d * d, std::move(gens), std::move(logical));
}

ValidationReport validate_css(const CssCode& code) {
  auto fail = [](std::string what, std::string detail, std::size_t idx) {
    ValidationReport r;
    r.ok = false;
    r.violation = std::move(what);
    r.detail = std::move(detail);
    r.generator = idx;
    return r;
  };
  if (code.num_data < 1) {
    ValidationReport r;
    r.ok = false;
    r.violation = "index";
    r.detail = "code has no data qubits";
    return r;
  }
  for (std::size_t g = 0; g < code.generators.size(); ++g) {
    const auto& qs = code.generators[g].qubits;
    for (int q : qs) {
      if (q < 0 || q >= code.num_data) {
        return fail("index", "qubit " + std::to_string(q + 1) + " outside 1.." +
                                 std::to_string(code.num_data), g);
      }
    }
    if (qs.size() < 2) return fail("weight", "generator has weight < 2", g);
    if (std::set<int>(qs.begin(), qs.end()).size() != qs.size()) {
      return fail("duplicate", "repeated qubit in generator", g);
    }
  }
  for (std::size_t a = 0; a < code.generators.size(); ++a) {
    if (code.generators[a].pauli != PauliType::kX) continue;
    const auto xa = support_bits(code.generators[a], code.num_data);
    for (std::size_t b = 0; b < code.generators.size(); ++b) {
      if (code.generators[b].pauli != PauliType::kZ) continue;
      std::size_t overlap = 0;
      for (int q : code.generators[b].qubits) overlap += xa.test(static_cast<std::size_t>(q));
      if (overlap % 2 != 0) {
        return fail("commutation",
                    "X generator " + std::to_string(a) + " and Z generator " +
                        std::to_string(b) + " overlap on " + std::to_string(overlap) +
                        " qubits",
                    std::max(a, b));
      }
    }
  }
  for (PauliType p : {PauliType::kZ, PauliType::kX}) {
    // Incremental echelon basis; each stored row is reduced against the
    // pivots of the rows before it.
    std::vector<std::pair<std::size_t, BitRow>> basis;
    for (std::size_t g = 0; g < code.generators.size(); ++g) {
      if (code.generators[g].pauli != p) continue;
      BitRow row = support_bits(code.generators[g], code.num_data);
      for (const auto& [pivot, b] : basis) {
        if (row.test(pivot)) row ^= b;
      }
      if (!row.any()) {
        return fail("independence",
                    std::string(1, to_char(p)) + " generator " + std::to_string(g) +
                        " is dependent on earlier ones",
                    g);
      }
      const std::size_t pivot = row.first_set();
      basis.emplace_back(pivot, std::move(row));
    }
  }
  return {};
}

}  // namespace qecsched
