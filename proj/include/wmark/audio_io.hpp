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

#include <Eigen/Core>

#include <cstdint>
#include <filesystem>
#include <vector>

namespace wmark {

/// Mono audio with samples normalized to [-1, 1].
struct AudioClip {
  Eigen::VectorXd samples;
  int sample_rate = 16000;
  int source_bit_depth = 16;

  Eigen::Index size() const { return samples.size(); }
};

struct WavReadOptions {
  // Average the channels of a stereo file instead of rejecting it.
  bool downmix_stereo = false;
};

AudioClip read_wav(const std::filesystem::path& path, const WavReadOptions& options = {});

/// Writes a canonical 44-byte-header mono 16-bit PCM file.
void write_wav(const AudioClip& clip, const std::filesystem::path& path);

// In-memory codec used by the file functions.
AudioClip parse_wav(const std::vector<std::uint8_t>& bytes, const WavReadOptions& options = {});
std::vector<std::uint8_t> serialize_wav(const AudioClip& clip);

// int16 <-> float conversion. Both directions scale by 32768, so the
// conversion is an exact inverse pair on the int16 grid; +1.0 clamps to 32767.
inline double pcm16_to_float(std::int16_t v) { return static_cast<double>(v) / 32768.0; }
std::int16_t float_to_pcm16(double s);

}  // namespace wmark
