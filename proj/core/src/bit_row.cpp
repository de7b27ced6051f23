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

#include "qecsched/bit_row.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace qecsched {

BitRow::BitRow(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

void BitRow::clear() {
  for (auto& w : words_) w = 0;
}

bool BitRow::any() const {
  for (auto w : words_) {
    if (w != 0) return true;
  }
  return false;
}

std::size_t BitRow::popcount() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitRow::is_subset_of(const BitRow& other) const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if ((words_[k] & ~other.words_[k]) != 0) return false;
  }
  return true;
}

std::size_t BitRow::first_set() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] != 0) {
      return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    }
  }
  return size_;
}

std::vector<int> BitRow::set_bits() const {
  std::vector<int> out;
  for (std::size_t k = 0; k < words_.size(); ++k) {
    auto w = words_[k];
    while (w != 0) {
      out.push_back(static_cast<int>(k * 64 + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

BitRow& BitRow::operator^=(const BitRow& other) {
  if (other.size_ != size_) throw std::invalid_argument("BitRow size mismatch");
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
  return *this;
}

std::size_t gf2_rank(std::vector<BitRow> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].test(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].test(col)) rows[r] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

}  // namespace qecsched
