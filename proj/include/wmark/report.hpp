// Copyright 2026 The wmark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Level x attack evaluation over a corpus, producing the robustness CSV and
// the interpolation-vs-replacement imperceptibility comparison.

#include "wmark/attacks.hpp"
#include "wmark/corpus.hpp"
#include "wmark/prng.hpp"
#include "wmark/watermark.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace wmark {

/// Per-attack seed: global XOR splitmix64(attack index). Appending an attack
/// leaves the seeds of the earlier ones unchanged.
std::uint64_t attack_seed(std::uint64_t global_seed, std::size_t attack_index);

/// The standard battery: noise 0.01, crop 10%, resample via 8 kHz and
/// 44.1 kHz, requantize to 8 bits, lowpass 2/3.2/6 kHz, and an external
/// 16 kbit/s codec when a command template is given.
std::vector<AttackSpec> standard_attacks(std::uint64_t global_seed,
                                         const std::optional<std::string>& encoder_command = std::nullopt);

struct ReportConfig {
  EmbedConfig embed;          // level is overridden per cell
  std::vector<int> levels = {1, 2, 3, 4};
  WatermarkKey key;
  std::vector<AttackSpec> attacks;  // the no-attack row is always emitted first
  unsigned threads = 1;
};

struct ReportRow {
  std::string audio_id;
  std::string basis;
  int level = 0;
  Band band = Band::Low;
  EnergyMode energy_mode = EnergyMode::High;
  std::string attack;
  std::string parameter;
  double imperceptibility_db = 0.0;
  double ber = 0.0;
  std::size_t unreadable = 0;
};

struct ImperceptibilityRow {
  std::string audio_id;
  std::string basis;
  int level = 0;
  double interpolation_db = 0.0;
  double replacement_db = 0.0;
};

struct Report {
  std::vector<ReportRow> robustness;
  std::vector<ImperceptibilityRow> imperceptibility;
};

Report run_report(const std::vector<corpus::NamedClip>& clips, const ReportConfig& cfg);

void write_robustness_csv(const std::vector<ReportRow>& rows, std::ostream& out);
void write_imperceptibility_csv(const std::vector<ImperceptibilityRow>& rows, std::ostream& out);

}  // namespace wmark
