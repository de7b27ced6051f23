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

#include "qecsched/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace qecsched {

Tableau::Tableau(int num_qubits)
    : n_(num_qubits),
      words_(static_cast<std::size_t>((num_qubits + 63) / 64)),
      xs_((2 * static_cast<std::size_t>(num_qubits) + 1) * words_, 0),
      zs_((2 * static_cast<std::size_t>(num_qubits) + 1) * words_, 0),
      signs_(2 * static_cast<std::size_t>(num_qubits) + 1, 0) {
  if (num_qubits < 1) throw std::invalid_argument("tableau needs at least one qubit");
  for (int q = 0; q < n_; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (q & 63);
    xs_[static_cast<std::size_t>(q) * words_ + (q >> 6)] |= bit;
    zs_[(static_cast<std::size_t>(q) + n_) * words_ + (q >> 6)] |= bit;
  }
}

namespace {

template <class F>
void for_rows(std::size_t rows, F&& f) {
  for (std::size_t r = 0; r < rows; ++r) f(r);
}

}  // namespace

void Tableau::h(int q) {
  const std::size_t w = static_cast<std::size_t>(q >> 6);
  const std::uint64_t bit = std::uint64_t{1} << (q & 63);
  for_rows(2 * static_cast<std::size_t>(n_), [&](std::size_t r) {
    auto& xw = xs_[r * words_ + w];
    auto& zw = zs_[r * words_ + w];
    const bool xb = xw & bit;
    const bool zb = zw & bit;
    signs_[r] ^= static_cast<std::uint8_t>(xb && zb);
    if (xb != zb) {
      xw ^= bit;
      zw ^= bit;
    }
  });
}

void Tableau::s(int q) {
  const std::size_t w = static_cast<std::size_t>(q >> 6);
  const std::uint64_t bit = std::uint64_t{1} << (q & 63);
  for_rows(2 * static_cast<std::size_t>(n_), [&](std::size_t r) {
    const bool xb = xs_[r * words_ + w] & bit;
    const bool zb = zs_[r * words_ + w] & bit;
    signs_[r] ^= static_cast<std::uint8_t>(xb && zb);
    if (xb) zs_[r * words_ + w] ^= bit;
  });
}

void Tableau::x(int q) {
  for_rows(2 * static_cast<std::size_t>(n_), [&](std::size_t r) { signs_[r] ^= zbit(r, q); });
}

void Tableau::z(int q) {
  for_rows(2 * static_cast<std::size_t>(n_), [&](std::size_t r) { signs_[r] ^= xbit(r, q); });
}

void Tableau::y(int q) {
  for_rows(2 * static_cast<std::size_t>(n_),
           [&](std::size_t r) { signs_[r] ^= static_cast<std::uint8_t>(xbit(r, q) ^ zbit(r, q)); });
}

void Tableau::cx(int control, int target) {
  if (control == target) throw std::invalid_argument("cx needs distinct qubits");
  const std::size_t wc = static_cast<std::size_t>(control >> 6);
  const std::size_t wt = static_cast<std::size_t>(target >> 6);
  const std::uint64_t bc = std::uint64_t{1} << (control & 63);
  const std::uint64_t bt = std::uint64_t{1} << (target & 63);
  for_rows(2 * static_cast<std::size_t>(n_), [&](std::size_t r) {
    const bool xc = xs_[r * words_ + wc] & bc;
    const bool zc = zs_[r * words_ + wc] & bc;
    const bool xt = xs_[r * words_ + wt] & bt;
    const bool zt = zs_[r * words_ + wt] & bt;
    signs_[r] ^= static_cast<std::uint8_t>(xc && zt && (xt == zc));
    if (xc) xs_[r * words_ + wt] ^= bt;
    if (zt) zs_[r * words_ + wc] ^= bc;
  });
}

void Tableau::swap(int a, int b) {
  if (a == b) return;
  cx(a, b);
  cx(b, a);
  cx(a, b);
}

void Tableau::rowmul(std::size_t h, std::size_t i) {
  // Phase bookkeeping in two bit-parallel mod-4 counters.
  std::uint64_t cnt1 = 0;
  std::uint64_t cnt2 = 0;
  for (std::size_t k = 0; k < words_; ++k) {
    auto& x1 = xs_[h * words_ + k];
    auto& z1 = zs_[h * words_ + k];
    const std::uint64_t x2 = xs_[i * words_ + k];
    const std::uint64_t z2 = zs_[i * words_ + k];
    const std::uint64_t old_x1 = x1;
    const std::uint64_t old_z1 = z1;
    x1 ^= x2;
    z1 ^= z2;
    const std::uint64_t x1z2 = old_x1 & z2;
    const std::uint64_t anti = (x2 & old_z1) ^ x1z2;
    cnt2 ^= (cnt1 ^ x1 ^ z1 ^ x1z2) & anti;
    cnt1 ^= anti;
  }
  unsigned log_i = static_cast<unsigned>(std::popcount(cnt1));
  log_i ^= static_cast<unsigned>(std::popcount(cnt2)) << 1;
  log_i += 2U * signs_[i] + 2U * signs_[h];
  signs_[h] = static_cast<std::uint8_t>((log_i & 3U) >> 1);
}

void Tableau::copy_row(std::size_t dst, std::size_t src) {
  for (std::size_t k = 0; k < words_; ++k) {
    xs_[dst * words_ + k] = xs_[src * words_ + k];
    zs_[dst * words_ + k] = zs_[src * words_ + k];
  }
  signs_[dst] = signs_[src];
}

void Tableau::clear_row(std::size_t r) {
  for (std::size_t k = 0; k < words_; ++k) {
    xs_[r * words_ + k] = 0;
    zs_[r * words_ + k] = 0;
  }
  signs_[r] = 0;
}

std::optional<bool> Tableau::peek_z(int q) const {
  const auto n = static_cast<std::size_t>(n_);
  for (std::size_t p = n; p < 2 * n; ++p) {
    if (xbit(p, q)) return std::nullopt;
  }
  Tableau scratch = *this;
  const std::size_t tmp = 2 * n;
  scratch.clear_row(tmp);
  for (std::size_t i = 0; i < n; ++i) {
    if (xbit(i, q)) scratch.rowmul(tmp, i + n);
  }
  return scratch.signs_[tmp] != 0;
}

std::optional<bool> Tableau::peek_x(int q) const {
  Tableau t = *this;
  t.h(q);
  return t.peek_z(q);
}

bool Tableau::measure_z(int q, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(n_);
  std::size_t p = 2 * n;
  for (std::size_t r = n; r < 2 * n; ++r) {
    if (xbit(r, q)) {
      p = r;
      break;
    }
  }
  if (p == 2 * n) {
    const std::size_t tmp = 2 * n;
    clear_row(tmp);
    for (std::size_t i = 0; i < n; ++i) {
      if (xbit(i, q)) rowmul(tmp, i + n);
    }
    return signs_[tmp] != 0;
  }
  for (std::size_t r = 0; r < 2 * n; ++r) {
    if (r != p && xbit(r, q)) rowmul(r, p);
  }
  copy_row(p - n, p);
  clear_row(p);
  zs_[p * words_ + static_cast<std::size_t>(q >> 6)] |= std::uint64_t{1} << (q & 63);
  const bool outcome = (rng() & 1U) != 0;
  signs_[p] = outcome ? 1 : 0;
  return outcome;
}

bool Tableau::measure_x(int q, std::mt19937_64& rng) {
  h(q);
  const bool outcome = measure_z(q, rng);
  h(q);
  return outcome;
}

void Tableau::reset_z(int q, std::mt19937_64& rng) {
  if (measure_z(q, rng)) x(q);
}

void Tableau::reset_x(int q, std::mt19937_64& rng) {
  reset_z(q, rng);
  h(q);
}

std::optional<bool> Tableau::peek_z_product(std::span<const int> qubits) const {
  if (qubits.empty()) return false;
  Tableau t = *this;
  for (std::size_t k = 1; k < qubits.size(); ++k) t.cx(qubits[k], qubits[0]);
  return t.peek_z(qubits[0]);
}

std::optional<bool> Tableau::peek_x_product(std::span<const int> qubits) const {
  Tableau t = *this;
  for (int q : qubits) t.h(q);
  return t.peek_z_product(qubits);
}

bool Tableau::is_product_qubit(int q) const {
  if (peek_z(q)) return true;
  if (peek_x(q)) return true;
  Tableau t = *this;
  // Y -> Z under S^dagger then H; S^3 = S^dagger.
  t.s(q);
  t.s(q);
  t.s(q);
  t.h(q);
  return t.peek_z(q).has_value();
}

}  // namespace qecsched
