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
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qecsched {

/// Parse error carrying the 1-based source line.
class StimParseError : public std::runtime_error {
 public:
  StimParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct StimInstruction {
  std::string name;
  std::vector<double> args;
  std::vector<int> targets;  // qubits, or negative record offsets for rec[-k]
  int line = 0;
};

/// The subset of the Stim text format that this project emits.
struct StimProgram {
  std::vector<StimInstruction> instructions;
  int num_qubits = 0;
  int num_measurements = 0;
  int num_detectors = 0;
  int num_observables = 0;
};

StimProgram parse_stim(std::string_view text);

struct StimSamples {
  int shots = 0;
  /// detectors[shot][k], observables[shot][k] as 0/1.
  std::vector<std::vector<std::uint8_t>> detectors;
  std::vector<std::vector<std::uint8_t>> observables;

  long long nonzero_detector_count() const;
  long long observable_flip_count() const;
};

/// Samples the program shot by shot on a stabilizer tableau. Noise channels
/// are sampled with the given seed.
StimSamples sample_stim(const StimProgram& program, int shots, std::uint64_t seed);

}  // namespace qecsched
