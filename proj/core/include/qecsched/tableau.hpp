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

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace qecsched {

/// Aaronson-Gottesman stabilizer tableau (destabilizers, stabilizers and one
/// scratch row), bit-packed per row. Starts in |0...0>.
class Tableau {
 public:
  explicit Tableau(int num_qubits);

  int num_qubits() const { return n_; }

  void h(int q);
  void s(int q);
  void x(int q);
  void y(int q);
  void z(int q);
  void cx(int control, int target);
  void swap(int a, int b);

  /// Z-basis measurement; collapses the state.
  bool measure_z(int q, std::mt19937_64& rng);
  bool measure_x(int q, std::mt19937_64& rng);
  void reset_z(int q, std::mt19937_64& rng);
  void reset_x(int q, std::mt19937_64& rng);

  /// Outcome of a Z measurement when it is deterministic, nullopt if random.
  /// Does not change the state.
  std::optional<bool> peek_z(int q) const;
  std::optional<bool> peek_x(int q) const;

  /// Deterministic value of the product of Z (or X) over `qubits`, or
  /// nullopt if that observable is not in the stabilizer group up to sign.
  std::optional<bool> peek_z_product(std::span<const int> qubits) const;
  std::optional<bool> peek_x_product(std::span<const int> qubits) const;

  /// True when some single-qubit Pauli on q stabilizes the state, i.e. q is
  /// not entangled with the rest.
  bool is_product_qubit(int q) const;

 private:
  bool xbit(std::size_t row, int q) const { return (xs_[row * words_ + (q >> 6)] >> (q & 63)) & 1U; }
  bool zbit(std::size_t row, int q) const { return (zs_[row * words_ + (q >> 6)] >> (q & 63)) & 1U; }
  /// row h := row h * row i, tracking the sign.
  void rowmul(std::size_t h, std::size_t i);
  void copy_row(std::size_t dst, std::size_t src);
  void clear_row(std::size_t r);

  int n_;
  std::size_t words_;
  std::vector<std::uint64_t> xs_;
  std::vector<std::uint64_t> zs_;
  std::vector<std::uint8_t> signs_;
};

}  // namespace qecsched
