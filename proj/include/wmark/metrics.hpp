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
#include "wmark/watermark.hpp"
#include "wmark/wavelet.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace wmark {

/// 10 log10(Σ original² / Σ watermarked²) over the common leading samples.
/// Positive values mean the watermarked signal lost energy.
double imperceptibility(const AudioClip& original, const AudioClip& watermarked);

/// (mismatches + unreadable) / length.
double ber(const std::vector<std::uint8_t>& reference, const ExtractedBits& extracted);
std::size_t unreadable_count(const ExtractedBits& extracted);

template <typename Derived>
double energy(const Eigen::MatrixBase<Derived>& x) {
  return static_cast<double>(x.squaredNorm());
}

/// Sign changes per sample pair; zero counts as positive.
double zero_crossing_rate(const Eigen::VectorXd& x);

struct Histogram {
  std::vector<double> edges;         // bins + 1 edges spanning [min, max]
  std::vector<std::size_t> counts;
};

Histogram histogram(const Eigen::VectorXd& x, int bins);

struct SubbandStats {
  int level = 0;
  char band = 'a';  // 'a' approximation, 'd' detail
  double mean = 0.0;
  double variance = 0.0;  // population
  double energy = 0.0;
  std::size_t count = 0;
  double zero_crossing_rate = 0.0;  // 0 for fewer than 2 coefficients
  Histogram hist;
};

SubbandStats describe(const Eigen::VectorXd& coeffs, int level, char band, int bins);

/// One entry per detail level d_1..d_L followed by the final approximation a_L.
std::vector<SubbandStats> subband_stats(const Decomposition<double>& decomp, int bins);

/// Per-level statistics of both bands for levels 1..max_level, as in
/// a Table-I/II style survey: each level's approximation and detail come from
/// a decomposition of that depth. Level 0 describes the signal itself.
std::vector<SubbandStats> level_survey(const Eigen::VectorXd& signal, const WaveletBasis<double>& basis,
                                       int max_level, int bins);

}  // namespace wmark
