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

#include "wmark/audio_io.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <string>
#include <variant>

namespace wmark {

struct NoiseAttack {
  double variance = 0.01;
};

/// Removes one contiguous block of round(fraction * N) samples.
struct CropAttack {
  double fraction = 0.1;
};

/// Round trip through an intermediate sample rate.
struct ResampleAttack {
  int intermediate_rate = 8000;
};

struct RequantizeAttack {
  int intermediate_bits = 8;
};

struct LowpassAttack {
  double cutoff_hz = 2000.0;
  int taps = 101;
};

/// Round trip through an external codec. `command` is run by the shell after
/// substituting {in}, {out} (WAV paths) and {bitrate} (kbit/s).
struct ExternalCompressAttack {
  std::string command;
  int bitrate_kbps = 16;
};

using AttackParams = std::variant<NoiseAttack, CropAttack, ResampleAttack, RequantizeAttack,
                                  LowpassAttack, ExternalCompressAttack>;

struct AttackSpec {
  AttackParams params;
  std::uint64_t seed = 0;

  std::string kind() const;
  /// Human-readable parameter value for reports ("0.01", "8000", "2000", ...).
  std::string parameter() const;
};

AudioClip apply_attack(const AudioClip& clip, const AttackSpec& spec);

Eigen::VectorXd add_gaussian_noise(const Eigen::VectorXd& x, double variance, std::uint64_t seed);
Eigen::VectorXd crop(const Eigen::VectorXd& x, double fraction, std::uint64_t seed);
Eigen::VectorXd requantize(const Eigen::VectorXd& x, int bits);

/// Hamming-windowed sinc, Σ taps = 1. `taps` must be odd.
Eigen::VectorXd design_fir_lowpass(double cutoff_hz, double sample_rate, int taps);

/// Same-length linear-phase filtering: the (taps-1)/2 group delay is removed.
Eigen::VectorXd filter_zero_delay(const Eigen::VectorXd& x, const Eigen::VectorXd& taps);

/// Rational polyphase resampler (L/M with L, M <= 1024).
AudioClip resample(const AudioClip& clip, int target_rate);

/// Deterministic generator for attack randomness: mt19937_64 for raw bits,
/// 53-bit uniforms and Marsaglia's polar method for normals. Avoids the
/// implementation-defined std distributions.
class AttackRng {
 public:
  explicit AttackRng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double normal();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace wmark
