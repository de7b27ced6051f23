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

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qecsched/bit_row.hpp"

namespace qecsched {

/// Pauli basis of a CSS generator. Z orders before X: Z checks are scheduled
/// first in every round.
enum class PauliType : unsigned char { kZ = 0, kX = 1 };

char to_char(PauliType p);
PauliType parse_pauli(std::string_view s);
inline PauliType dual(PauliType p) {
  return p == PauliType::kZ ? PauliType::kX : PauliType::kZ;
}

/// A stabilizer generator given by its ordered data-qubit support.
/// Data qubits are 0-based here; serialized forms use 1-based indices.
struct GeneratorLabel {
  PauliType pauli = PauliType::kZ;
  std::vector<int> qubits;

  friend bool operator==(const GeneratorLabel&, const GeneratorLabel&) = default;
};

BitRow support_bits(const GeneratorLabel& label, int num_data);

/// CSS code: n data qubits and a generator list with the Z block first.
struct CssCode {
  int num_data = 0;
  std::vector<GeneratorLabel> generators;
  /// Support of a logical Z representative. Empty when unknown.
  std::vector<int> logical_z;

  std::vector<GeneratorLabel> generators_of(PauliType p) const;
  std::size_t count_of(PauliType p) const;
};

/// Builds a code and stable-sorts the generators so the Z block comes first.
CssCode make_css_code(int num_data, std::vector<GeneratorLabel> generators,
                      std::vector<int> logical_z = {});

/// Distance-d repetition code: Z checks on (d_i, d_{i+1}), logical Z = d_1.
CssCode repetition_code(int d);

/// Rotated surface code on a d x d grid, data (r, c) -> index r*d + c.
///
/// Bulk faces (i, j) with top-left cell (i, j) are Z-type when i + j is even.
/// Weight-2 checks continue the same checkerboard outside the grid: X-type on
/// the top and bottom rows, Z-type on the left and right columns. With this
/// orientation grid row 0 carries logical Z.
CssCode rotated_surface_code(int d);

struct ValidationReport {
  bool ok = true;
  std::string violation;  // "index", "weight", "duplicate", "commutation", "independence"
  std::string detail;
  std::optional<std::size_t> generator;  // first offending generator

  explicit operator bool() const { return ok; }
};

/// Checks index bounds, weight >= 2, duplicates, X/Z commutation and
/// per-basis GF(2) independence. Reports the first violation found.
ValidationReport validate_css(const CssCode& code);

}  // namespace qecsched
