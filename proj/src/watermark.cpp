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

#include "wmark/watermark.hpp"

#include "wmark/error.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace wmark {

void EmbedConfig::validate() const {
  if (level < 1 || level > 10) throw Error(ErrorKind::Parameter, "level must be in [1, 10]");
  if (!(alpha > 0.0)) throw Error(ErrorKind::Parameter, "alpha must be positive");
  if (n_bits < 1) throw Error(ErrorKind::Parameter, "n_bits must be at least 1");
  if (min_silence_run < 1) throw Error(ErrorKind::Parameter, "silence run threshold must be at least 1");
  (void)detail::scaling_filter(basis);
}

SplitResult split_silence(const Eigen::VectorXd& samples, std::size_t min_run) {
  if (min_run < 1) throw Error(ErrorKind::Parameter, "silence run threshold must be at least 1");
  const auto n = static_cast<std::size_t>(samples.size());
  SplitResult out;
  out.map.original_length = n;

  std::vector<double> voiced;
  voiced.reserve(n);
  std::size_t i = 0;
  while (i < n) {
    if (samples[Eigen::Index(i)] != 0.0) {
      voiced.push_back(samples[Eigen::Index(i)]);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && samples[Eigen::Index(j)] == 0.0) ++j;
    if (j - i >= min_run) {
      out.map.runs.push_back({i, j - i});
    } else {
      voiced.insert(voiced.end(), j - i, 0.0);
    }
    i = j;
  }
  if (voiced.empty()) throw Error(ErrorKind::EmptyVoiced, "signal is entirely silent");
  out.voiced = Eigen::Map<const Eigen::VectorXd>(voiced.data(), Eigen::Index(voiced.size()));
  return out;
}

Eigen::VectorXd merge_silence(const Eigen::VectorXd& voiced, const SilenceMap& map) {
  std::size_t silent = 0;
  std::size_t cursor = 0;
  for (const auto& run : map.runs) {
    if (run.length == 0 || run.start < cursor)
      throw Error(ErrorKind::Inconsistent, "silence runs must be nonempty, sorted and disjoint");
    cursor = run.start + run.length;
    silent += run.length;
  }
  if (cursor > map.original_length ||
      static_cast<std::size_t>(voiced.size()) + silent != map.original_length)
    throw Error(ErrorKind::Inconsistent, "voiced samples plus silence runs do not add up to " +
                                             std::to_string(map.original_length));

  Eigen::VectorXd out = Eigen::VectorXd::Zero(Eigen::Index(map.original_length));
  Eigen::Index src = 0;
  std::size_t pos = 0;
  for (const auto& run : map.runs) {
    const auto count = Eigen::Index(run.start - pos);
    out.segment(Eigen::Index(pos), count) = voiced.segment(src, count);
    src += count;
    pos = run.start + run.length;
  }
  const auto tail = Eigen::Index(map.original_length - pos);
  out.segment(Eigen::Index(pos), tail) = voiced.segment(src, tail);
  return out;
}

std::string to_string(const ExtractedBits& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b == BitOutcome::One ? '1' : b == BitOutcome::Zero ? '0' : '?');
  return s;
}

ExtractedBits parse_extracted_bits(const std::string& line) {
  ExtractedBits bits;
  for (char c : line) {
    if (c == '0') bits.push_back(BitOutcome::Zero);
    else if (c == '1') bits.push_back(BitOutcome::One);
    else if (c == '?') bits.push_back(BitOutcome::Unreadable);
    else if (c == '\n' || c == '\r') break;
    else throw Error(ErrorKind::Format, std::string("unexpected character '") + c + "' in bit line");
  }
  return bits;
}

Eigen::Index high_energy_anchor(const Eigen::VectorXd& coeffs) {
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < coeffs.size(); ++j)
    if (std::abs(coeffs[j]) > std::abs(coeffs[best])) best = j;
  return best;
}

Eigen::Index low_energy_anchor(const Eigen::VectorXd& coeffs) {
  Eigen::Index best = -1;
  for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
    const double m = std::abs(coeffs[j]);
    if (m == 0.0) continue;
    if (best < 0 || m < std::abs(coeffs[best])) best = j;
  }
  return best < 0 ? 0 : best;
}

namespace {

Eigen::Index anchor_for(const Eigen::VectorXd& coeffs, EnergyMode mode) {
  return mode == EnergyMode::High ? high_energy_anchor(coeffs) : low_energy_anchor(coeffs);
}

void check_bit(int bit) {
  if (bit != 0 && bit != 1) throw Error(ErrorKind::Parameter, "watermark bit must be 0 or 1");
}

}  // namespace

Eigen::VectorXd embed_bit_in_coeffs(const Eigen::VectorXd& coeffs, int bit, double alpha,
                                    EnergyMode mode) {
  check_bit(bit);
  const Eigen::Index n = coeffs.size();
  if (n < 2) throw Error(ErrorKind::SegmentTooShort, "embedding needs at least 2 coefficients");

  // Insert in front of the anchor; the inserted value lands at `anchor`,
  // the anchor itself moves to anchor + 1.
  const Eigen::Index anchor = anchor_for(coeffs, mode);
  Eigen::VectorXd grown(n + 1);
  grown.head(anchor) = coeffs.head(anchor);
  grown[anchor] = alpha * bit;
  grown.tail(n - anchor) = coeffs.tail(n - anchor);

  Eigen::Index victim = -1;
  for (Eigen::Index j = 0; j <= n; ++j) {
    if (j == anchor || j == anchor + 1) continue;
    if (victim < 0 || std::abs(grown[j]) < std::abs(grown[victim])) victim = j;
  }

  Eigen::VectorXd out(n);
  out.head(victim) = grown.head(victim);
  out.tail(n - victim) = grown.tail(n - victim);
  return out;
}

BitOutcome extract_bit_from_coeffs(const Eigen::VectorXd& coeffs, double alpha) {
  if (coeffs.size() < 1) return BitOutcome::Unreadable;
  const Eigen::Index index = high_energy_anchor(coeffs);
  if (index == 0) return BitOutcome::Unreadable;
  const double v = coeffs[index - 1];
  return std::abs(v - alpha) < std::abs(v) ? BitOutcome::One : BitOutcome::Zero;
}

Eigen::VectorXd replace_bit_in_coeffs(const Eigen::VectorXd& coeffs, int bit, double alpha,
                                      EnergyMode mode) {
  check_bit(bit);
  if (coeffs.size() < 2) throw Error(ErrorKind::SegmentTooShort, "embedding needs at least 2 coefficients");
  const Eigen::Index anchor = anchor_for(coeffs, mode);
  Eigen::VectorXd out = coeffs;
  out[anchor == 0 ? 1 : anchor - 1] = alpha * bit;
  return out;
}

Segmentation plan_segments(std::size_t voiced_length, const EmbedConfig& cfg) {
  const std::size_t block = std::size_t(1) << cfg.level;
  const std::size_t required = cfg.n_bits * block * 2;
  if (voiced_length < required)
    throw Error(ErrorKind::Capacity, "capacity: " + std::to_string(cfg.n_bits) + " bits at level " +
                                         std::to_string(cfg.level) + " need " +
                                         std::to_string(required) + " voiced samples, have " +
                                         std::to_string(voiced_length));
  Segmentation seg;
  seg.count = cfg.n_bits;
  seg.length = (voiced_length / cfg.n_bits) / block * block;
  return seg;
}

namespace {

using CoeffRule = std::function<Eigen::VectorXd(const Eigen::VectorXd&, int)>;

AudioClip embed_with(const AudioClip& clip, const std::vector<std::uint8_t>& bits,
                     const EmbedConfig& cfg, const CoeffRule& rule) {
  cfg.validate();
  if (bits.size() != cfg.n_bits)
    throw Error(ErrorKind::Parameter, "payload has " + std::to_string(bits.size()) +
                                          " bits, configuration expects " + std::to_string(cfg.n_bits));
  const auto basis = make_basis(cfg.basis);
  auto [voiced, map] = split_silence(clip.samples, cfg.min_silence_run);
  const auto seg = plan_segments(std::size_t(voiced.size()), cfg);

  for (std::size_t i = 0; i < seg.count; ++i) {
    auto window = voiced.segment(Eigen::Index(i * seg.length), Eigen::Index(seg.length));
    auto decomp = dwt(Eigen::VectorXd(window), basis, cfg.level);
    auto& band = cfg.band == Band::Low ? decomp.approx : decomp.detail(cfg.level);
    band = rule(band, bits[i]);
    window = idwt(decomp);
  }

  AudioClip out = clip;
  out.samples = merge_silence(voiced, map);
  return out;
}

std::vector<std::uint8_t> payload_for(const WatermarkKey& key, const EmbedConfig& cfg) {
  if (key.length != cfg.n_bits)
    throw Error(ErrorKind::Parameter, "key length " + std::to_string(key.length) +
                                          " differs from configured bit count " +
                                          std::to_string(cfg.n_bits));
  return lfsr_generate(key);
}

}  // namespace

AudioClip embed_bits(const AudioClip& clip, const std::vector<std::uint8_t>& bits,
                     const EmbedConfig& cfg) {
  return embed_with(clip, bits, cfg, [&](const Eigen::VectorXd& c, int bit) {
    return embed_bit_in_coeffs(c, bit, cfg.alpha, cfg.energy_mode);
  });
}

AudioClip embed(const AudioClip& clip, const WatermarkKey& key, const EmbedConfig& cfg) {
  return embed_bits(clip, payload_for(key, cfg), cfg);
}

AudioClip embed_replacement_baseline(const AudioClip& clip, const WatermarkKey& key,
                                     const EmbedConfig& cfg) {
  return embed_with(clip, payload_for(key, cfg), cfg, [&](const Eigen::VectorXd& c, int bit) {
    return replace_bit_in_coeffs(c, bit, cfg.alpha, cfg.energy_mode);
  });
}

ExtractedBits extract(const AudioClip& clip, const EmbedConfig& cfg) {
  cfg.validate();
  const auto basis = make_basis(cfg.basis);
  const auto voiced = split_silence(clip.samples, cfg.min_silence_run).voiced;
  const auto seg = plan_segments(std::size_t(voiced.size()), cfg);

  ExtractedBits bits;
  bits.reserve(seg.count);
  for (std::size_t i = 0; i < seg.count; ++i) {
    const Eigen::VectorXd window = voiced.segment(Eigen::Index(i * seg.length), Eigen::Index(seg.length));
    const auto decomp = dwt(window, basis, cfg.level);
    const auto& band = cfg.band == Band::Low ? decomp.approx : decomp.detail(cfg.level);
    bits.push_back(extract_bit_from_coeffs(band, cfg.alpha));
  }
  return bits;
}

std::string to_string(Band band) { return band == Band::Low ? "low" : "high"; }
std::string to_string(EnergyMode mode) { return mode == EnergyMode::High ? "high" : "low"; }

Band parse_band(const std::string& s) {
  if (s == "low") return Band::Low;
  if (s == "high") return Band::High;
  throw Error(ErrorKind::Parameter, "band must be 'low' or 'high', got '" + s + "'");
}

EnergyMode parse_energy_mode(const std::string& s) {
  if (s == "high") return EnergyMode::High;
  if (s == "low") return EnergyMode::Low;
  throw Error(ErrorKind::Parameter, "energy mode must be 'high' or 'low', got '" + s + "'");
}

}  // namespace wmark
