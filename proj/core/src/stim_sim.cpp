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

#include "qecsched/stim_sim.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <random>
#include <set>

#include "qecsched/tableau.hpp"

namespace qecsched {

StimParseError::StimParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

const std::set<std::string, std::less<>> kKnown = {
    "QUBIT_COORDS", "R",     "RX",          "M",           "MX",        "MR",          "MRX",
    "CX",           "CNOT",  "SWAP",        "H",           "X",         "Y",           "Z",
    "TICK",         "DETECTOR", "OBSERVABLE_INCLUDE", "DEPOLARIZE1", "DEPOLARIZE2", "X_ERROR",
    "Z_ERROR"};

bool is_measurement(std::string_view name) {
  return name == "M" || name == "MX" || name == "MR" || name == "MRX";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw StimParseError(line, "bad integer '" + std::string(s) + "'");
  }
  return value;
}

double parse_double(std::string_view s, int line) {
  s = trim(s);
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw StimParseError(line, "bad argument '" + std::string(s) + "'");
  }
}

}  // namespace

StimProgram parse_stim(std::string_view text) {
  StimProgram prog;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    StimInstruction ins;
    ins.line = line_no;
    std::size_t k = 0;
    while (k < line.size() && (std::isalnum(static_cast<unsigned char>(line[k])) || line[k] == '_')) ++k;
    ins.name = std::string(line.substr(0, k));
    if (!kKnown.contains(ins.name)) throw StimParseError(line_no, "unsupported instruction '" + ins.name + "'");
    std::string_view rest = line.substr(k);
    if (!rest.empty() && rest.front() == '(') {
      const auto close = rest.find(')');
      if (close == std::string_view::npos) throw StimParseError(line_no, "unclosed '('");
      std::string_view args = rest.substr(1, close - 1);
      while (!args.empty()) {
        const auto comma = args.find(',');
        ins.args.push_back(parse_double(args.substr(0, comma), line_no));
        if (comma == std::string_view::npos) break;
        args.remove_prefix(comma + 1);
      }
      rest = rest.substr(close + 1);
    }
    rest = trim(rest);
    while (!rest.empty()) {
      std::size_t end = 0;
      while (end < rest.size() && !std::isspace(static_cast<unsigned char>(rest[end]))) ++end;
      std::string_view tok = rest.substr(0, end);
      rest = trim(rest.substr(end));
      if (tok.starts_with("rec[")) {
        if (!tok.ends_with("]")) throw StimParseError(line_no, "bad record target");
        const int offset = parse_int(tok.substr(4, tok.size() - 5), line_no);
        if (offset >= 0) throw StimParseError(line_no, "record offsets must be negative");
        if (-offset > prog.num_measurements) throw StimParseError(line_no, "record offset out of range");
        ins.targets.push_back(offset);
      } else {
        const int q = parse_int(tok, line_no);
        if (q < 0) throw StimParseError(line_no, "negative qubit");
        ins.targets.push_back(q);
        if (ins.name != "DETECTOR" && ins.name != "OBSERVABLE_INCLUDE") {
          prog.num_qubits = std::max(prog.num_qubits, q + 1);
        }
      }
    }
    const bool wants_rec = ins.name == "DETECTOR" || ins.name == "OBSERVABLE_INCLUDE";
    if (!wants_rec) {
      for (int t : ins.targets) {
        if (t < 0) throw StimParseError(line_no, "record target on a gate");
      }
    }
    if ((ins.name == "CX" || ins.name == "CNOT" || ins.name == "SWAP" || ins.name == "DEPOLARIZE2") &&
        ins.targets.size() % 2 != 0) {
      throw StimParseError(line_no, "two-qubit instruction needs an even number of targets");
    }
    if (is_measurement(ins.name)) prog.num_measurements += static_cast<int>(ins.targets.size());
    if (ins.name == "DETECTOR") ++prog.num_detectors;
    if (ins.name == "OBSERVABLE_INCLUDE") {
      const int idx = ins.args.empty() ? 0 : static_cast<int>(ins.args.front());
      prog.num_observables = std::max(prog.num_observables, idx + 1);
    }
    prog.instructions.push_back(std::move(ins));
    if (eol == text.size()) break;
  }
  return prog;
}

long long StimSamples::nonzero_detector_count() const {
  long long total = 0;
  for (const auto& shot : detectors) total += std::count(shot.begin(), shot.end(), 1);
  return total;
}

long long StimSamples::observable_flip_count() const {
  long long total = 0;
  for (const auto& shot : observables) total += std::count(shot.begin(), shot.end(), 1);
  return total;
}

StimSamples sample_stim(const StimProgram& program, int shots, std::uint64_t seed) {
  if (shots < 0) throw std::invalid_argument("shots must be non-negative");
  StimSamples out;
  out.shots = shots;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const int nq = std::max(1, program.num_qubits);

  auto apply_pauli = [](Tableau& t, int q, int which) {
    if (which == 1) t.x(q);
    if (which == 2) t.y(q);
    if (which == 3) t.z(q);
  };

  for (int shot = 0; shot < shots; ++shot) {
    Tableau t(nq);
    std::vector<std::uint8_t> record;
    record.reserve(static_cast<std::size_t>(program.num_measurements));
    std::vector<std::uint8_t> dets;
    std::vector<std::uint8_t> obs(static_cast<std::size_t>(program.num_observables), 0);
    for (const auto& ins : program.instructions) {
      const auto& name = ins.name;
      const auto& tg = ins.targets;
      const double p = ins.args.empty() ? 0.0 : ins.args.front();
      if (name == "R") {
        for (int q : tg) t.reset_z(q, rng);
      } else if (name == "RX") {
        for (int q : tg) t.reset_x(q, rng);
      } else if (name == "M" || name == "MR") {
        for (int q : tg) {
          const bool b = t.measure_z(q, rng);
          record.push_back(b);
          if (name == "MR" && b) t.x(q);
        }
      } else if (name == "MX" || name == "MRX") {
        for (int q : tg) {
          const bool b = t.measure_x(q, rng);
          record.push_back(b);
          if (name == "MRX" && b) t.z(q);
        }
      } else if (name == "CX" || name == "CNOT") {
        for (std::size_t k = 0; k + 1 < tg.size(); k += 2) t.cx(tg[k], tg[k + 1]);
      } else if (name == "SWAP") {
        for (std::size_t k = 0; k + 1 < tg.size(); k += 2) t.swap(tg[k], tg[k + 1]);
      } else if (name == "H") {
        for (int q : tg) t.h(q);
      } else if (name == "X") {
        for (int q : tg) t.x(q);
      } else if (name == "Y") {
        for (int q : tg) t.y(q);
      } else if (name == "Z") {
        for (int q : tg) t.z(q);
      } else if (name == "X_ERROR" || name == "Z_ERROR") {
        for (int q : tg) {
          if (uniform(rng) < p) apply_pauli(t, q, name == "X_ERROR" ? 1 : 3);
        }
      } else if (name == "DEPOLARIZE1") {
        for (int q : tg) {
          if (uniform(rng) < p) apply_pauli(t, q, 1 + static_cast<int>(rng() % 3));
        }
      } else if (name == "DEPOLARIZE2") {
        for (std::size_t k = 0; k + 1 < tg.size(); k += 2) {
          if (uniform(rng) < p) {
            const int which = 1 + static_cast<int>(rng() % 15);
            apply_pauli(t, tg[k], which / 4);
            apply_pauli(t, tg[k + 1], which % 4);
          }
        }
      } else if (name == "DETECTOR" || name == "OBSERVABLE_INCLUDE") {
        std::uint8_t parity = 0;
        for (int r : tg) {
          const auto idx = static_cast<long long>(record.size()) + r;
          if (r >= 0 || idx < 0) throw StimParseError(ins.line, "bad record reference");
          parity ^= record[static_cast<std::size_t>(idx)];
        }
        if (name == "DETECTOR") {
          dets.push_back(parity);
        } else {
          obs[static_cast<std::size_t>(p)] ^= parity;
        }
      }
      // QUBIT_COORDS and TICK carry no simulation semantics.
    }
    out.detectors.push_back(std::move(dets));
    out.observables.push_back(std::move(obs));
  }
  return out;
}

}  // namespace qecsched
