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

#include "wmark/metrics.hpp"

#include "wmark/error.hpp"

#include <algorithm>
#include <cmath>

namespace wmark {

double imperceptibility(const AudioClip& original, const AudioClip& watermarked) {
  if (original.samples.size() == 0 || watermarked.samples.size() == 0)
    throw Error(ErrorKind::Alignment, "imperceptibility needs non-empty signals");
  if (original.sample_rate != watermarked.sample_rate)
    throw Error(ErrorKind::Alignment, "sample rates differ");
  const Eigen::Index n = std::min(original.samples.size(), watermarked.samples.size());
  const double num = original.samples.head(n).squaredNorm();
  const double den = watermarked.samples.head(n).squaredNorm();
  if (den == 0.0) throw Error(ErrorKind::UndefinedRatio, "watermarked signal has zero energy");
  if (num == 0.0) throw Error(ErrorKind::UndefinedRatio, "original signal has zero energy");
  return 10.0 * std::log10(num / den);
}

double ber(const std::vector<std::uint8_t>& reference, const ExtractedBits& extracted) {
  if (reference.size() != extracted.size())
    throw Error(ErrorKind::Alignment, "reference has " + std::to_string(reference.size()) +
                                          " bits, extraction has " + std::to_string(extracted.size()));
  if (reference.empty()) throw Error(ErrorKind::Alignment, "empty bit sequences");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    const auto want = reference[i] ? BitOutcome::One : BitOutcome::Zero;
    if (extracted[i] != want) ++errors;
  }
  return double(errors) / double(reference.size());
}

std::size_t unreadable_count(const ExtractedBits& extracted) {
  return std::size_t(std::count(extracted.begin(), extracted.end(), BitOutcome::Unreadable));
}

double zero_crossing_rate(const Eigen::VectorXd& x) {
  if (x.size() < 2) throw Error(ErrorKind::Parameter, "zero-crossing rate needs at least 2 samples");
  std::size_t changes = 0;
  for (Eigen::Index i = 1; i < x.size(); ++i)
    if ((x[i - 1] >= 0.0) != (x[i] >= 0.0)) ++changes;
  return double(changes) / double(x.size() - 1);
}

Histogram histogram(const Eigen::VectorXd& x, int bins) {
  if (bins < 1) throw Error(ErrorKind::Parameter, "histogram needs at least one bin");
  Histogram h;
  h.counts.assign(std::size_t(bins), 0);
  const double lo = x.size() ? x.minCoeff() : 0.0;
  const double hi = x.size() ? x.maxCoeff() : 0.0;
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) h.edges.push_back(i == bins ? hi : lo + width * i);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    auto bin = width > 0.0 ? static_cast<std::ptrdiff_t>((x[i] - lo) / width) : 0;
    bin = std::clamp<std::ptrdiff_t>(bin, 0, bins - 1);
    ++h.counts[std::size_t(bin)];
  }
  return h;
}

SubbandStats describe(const Eigen::VectorXd& coeffs, int level, char band, int bins) {
  SubbandStats s;
  s.level = level;
  s.band = band;
  s.count = std::size_t(coeffs.size());
  if (coeffs.size() > 0) {
    s.mean = coeffs.mean();
    s.variance = (coeffs.array() - s.mean).square().mean();
  }
  s.energy = energy(coeffs);
  if (coeffs.size() >= 2) s.zero_crossing_rate = zero_crossing_rate(coeffs);
  s.hist = histogram(coeffs, bins);
  return s;
}

std::vector<SubbandStats> subband_stats(const Decomposition<double>& decomp, int bins) {
  std::vector<SubbandStats> out;
  for (int level = 1; level <= decomp.levels(); ++level)
    out.push_back(describe(decomp.detail(level), level, 'd', bins));
  out.push_back(describe(decomp.approx, decomp.levels(), 'a', bins));
  return out;
}

std::vector<SubbandStats> level_survey(const Eigen::VectorXd& signal, const WaveletBasis<double>& basis,
                                       int max_level, int bins) {
  std::vector<SubbandStats> out;
  out.push_back(describe(signal, 0, 's', bins));
  const auto decomp = dwt(signal, basis, max_level);
  // The detail of level k is the same in every decomposition at least k deep;
  // the approximation of level k is rebuilt from the coarser levels.
  std::vector<Eigen::VectorXd> approx(std::size_t(max_level) + 1);
  approx[std::size_t(max_level)] = decomp.approx;
  for (int level = max_level; level > 1; --level) {
    auto a = detail::synthesize_stage(approx[std::size_t(level)], decomp.detail(level), basis.lo_synthesis,
                                      basis.hi_synthesis);
    if (decomp.padded[std::size_t(level - 1)]) a.conservativeResize(a.size() - 1);
    approx[std::size_t(level - 1)] = std::move(a);
  }
  for (int level = 1; level <= max_level; ++level) {
    out.push_back(describe(approx[std::size_t(level)], level, 'a', bins));
    out.push_back(describe(decomp.detail(level), level, 'd', bins));
  }
  return out;
}

}  // namespace wmark
