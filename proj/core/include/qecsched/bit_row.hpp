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
#include <cstdint>
#include <vector>

namespace qecsched {

/// Fixed-length GF(2) vector packed into 64-bit words.
///
/// Used for parity-matrix rows, generator supports and Gaussian elimination.
/// Bits past `size()` in the last word are always zero.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t size);

  std::size_t size() const { return size_; }
  std::size_t num_words() const { return words_.size(); }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void clear();

  bool any() const;
  std::size_t popcount() const;
  bool is_subset_of(const BitRow& other) const;

  /// Index of the lowest set bit, or size() if none.
  std::size_t first_set() const;
  std::vector<int> set_bits() const;

  BitRow& operator^=(const BitRow& other);
  friend bool operator==(const BitRow&, const BitRow&) = default;

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Rank over GF(2) of the given rows (all rows must share one size).
std::size_t gf2_rank(std::vector<BitRow> rows);

}  // namespace qecsched
