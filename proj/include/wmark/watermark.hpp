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

// Self-adaptive interpolation embedding in the DWT domain and its blind
// extractor. One bit per segment: the bit value (scaled by alpha) is inserted
// directly in front of the anchor coefficient, and a minimal-magnitude
// coefficient elsewhere is dropped so the band keeps its length.

#include "wmark/audio_io.hpp"
#include "wmark/prng.hpp"
#include "wmark/wavelet.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace wmark {

enum class Band { Low, High };
enum class EnergyMode { High, Low };

struct EmbedConfig {
  std::string basis = "haar";
  int level = 1;
  Band band = Band::Low;
  EnergyMode energy_mode = EnergyMode::High;
  double alpha = 1.0;
  std::size_t n_bits = 31;
  // Zero runs at least this long are treated as silence and bypassed.
  std::size_t min_silence_run = 16;

  void validate() const;
};

struct SilenceRun {
  std::size_t start = 0;   // in original-signal coordinates
  std::size_t length = 0;
};

struct SilenceMap {
  std::vector<SilenceRun> runs;
  std::size_t original_length = 0;
};

struct SplitResult {
  Eigen::VectorXd voiced;
  SilenceMap map;
};

SplitResult split_silence(const Eigen::VectorXd& samples, std::size_t min_run);
Eigen::VectorXd merge_silence(const Eigen::VectorXd& voiced, const SilenceMap& map);

enum class BitOutcome : std::uint8_t { Zero, One, Unreadable };

using ExtractedBits = std::vector<BitOutcome>;

/// '0', '1' or '?' per segment.
std::string to_string(const ExtractedBits& bits);
ExtractedBits parse_extracted_bits(const std::string& line);

// Coefficient-level primitives. Positions are 0-based here; "anchor at
// position 1" in the usual 1-based wording is anchor index 0.

/// argmax |c|, ties to the lowest index.
Eigen::Index high_energy_anchor(const Eigen::VectorXd& coeffs);
/// argmin over nonzero |c|, ties to the lowest index; index 0 if all are zero.
Eigen::Index low_energy_anchor(const Eigen::VectorXd& coeffs);

Eigen::VectorXd embed_bit_in_coeffs(const Eigen::VectorXd& coeffs, int bit, double alpha,
                                    EnergyMode mode);
BitOutcome extract_bit_from_coeffs(const Eigen::VectorXd& coeffs, double alpha);

/// Overwrites the coefficient in front of the anchor (or after it when the
/// anchor is first) with alpha * bit.
Eigen::VectorXd replace_bit_in_coeffs(const Eigen::VectorXd& coeffs, int bit, double alpha,
                                      EnergyMode mode);

/// Segment geometry shared by the embedder and the extractor.
struct Segmentation {
  std::size_t count = 0;
  std::size_t length = 0;  // samples per segment, a multiple of 2^level
};

Segmentation plan_segments(std::size_t voiced_length, const EmbedConfig& cfg);

AudioClip embed(const AudioClip& clip, const WatermarkKey& key, const EmbedConfig& cfg);
AudioClip embed_bits(const AudioClip& clip, const std::vector<std::uint8_t>& bits,
                     const EmbedConfig& cfg);
AudioClip embed_replacement_baseline(const AudioClip& clip, const WatermarkKey& key,
                                     const EmbedConfig& cfg);
ExtractedBits extract(const AudioClip& clip, const EmbedConfig& cfg);

std::string to_string(Band band);
std::string to_string(EnergyMode mode);
Band parse_band(const std::string& s);
EnergyMode parse_energy_mode(const std::string& s);

}  // namespace wmark
