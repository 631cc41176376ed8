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

#include "wmark/attacks.hpp"

#include "wmark/error.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <sstream>

namespace wmark {

AttackRng::AttackRng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t AttackRng::next_u64() { return engine_(); }

double AttackRng::uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

double AttackRng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  have_spare_ = true;
  return u * scale;
}

Eigen::VectorXd add_gaussian_noise(const Eigen::VectorXd& x, double variance, std::uint64_t seed) {
  if (!(variance > 0.0)) throw Error(ErrorKind::Parameter, "noise variance must be positive");
  AttackRng rng(seed);
  const double sigma = std::sqrt(variance);
  Eigen::VectorXd y(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) y[i] = std::clamp(x[i] + sigma * rng.normal(), -1.0, 1.0);
  return y;
}

Eigen::VectorXd crop(const Eigen::VectorXd& x, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw Error(ErrorKind::Parameter, "crop fraction must be in (0, 1)");
  const Eigen::Index n = x.size();
  const auto block = static_cast<Eigen::Index>(std::llround(fraction * double(n)));
  AttackRng rng(seed);
  const auto offset = static_cast<Eigen::Index>(rng.next_u64() % std::uint64_t(n - block + 1));
  Eigen::VectorXd y(n - block);
  y.head(offset) = x.head(offset);
  y.tail(n - block - offset) = x.tail(n - block - offset);
  return y;
}

Eigen::VectorXd requantize(const Eigen::VectorXd& x, int bits) {
  if (bits < 1 || bits >= 16) throw Error(ErrorKind::Parameter, "intermediate bit depth must be in [1, 15]");
  // b = 1 has no nonzero level; it maps everything to 0.
  const double levels = double((1 << (bits - 1)) - 1);
  if (levels == 0.0) return Eigen::VectorXd::Zero(x.size());
  return x.unaryExpr([levels](double s) { return std::round(s * levels) / levels; });
}

Eigen::VectorXd design_fir_lowpass(double cutoff_hz, double sample_rate, int taps) {
  if (taps < 1 || taps % 2 == 0) throw Error(ErrorKind::Parameter, "FIR tap count must be odd");
  if (!(cutoff_hz > 0.0 && cutoff_hz < sample_rate / 2.0))
    throw Error(ErrorKind::Parameter, "cutoff must lie strictly between 0 and Nyquist");
  const double fc = cutoff_hz / sample_rate;  // cycles per sample
  const int mid = (taps - 1) / 2;
  Eigen::VectorXd h(taps);
  for (int i = 0; i < taps; ++i) {
    const double t = i - mid;
    const double sinc = t == 0 ? 2.0 * fc : std::sin(2.0 * std::numbers::pi * fc * t) / (std::numbers::pi * t);
    const double window = taps == 1 ? 1.0 : 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (taps - 1));
    h[i] = sinc * window;
  }
  return h / h.sum();
}

Eigen::VectorXd filter_zero_delay(const Eigen::VectorXd& x, const Eigen::VectorXd& taps) {
  const Eigen::Index n = x.size();
  const Eigen::Index t = taps.size();
  const Eigen::Index delay = (t - 1) / 2;
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // y[i] = sum_k taps[k] * x[i + delay - k]
    const Eigen::Index k_lo = std::max<Eigen::Index>(0, i + delay - (n - 1));
    const Eigen::Index k_hi = std::min<Eigen::Index>(t - 1, i + delay);
    double acc = 0.0;
    for (Eigen::Index k = k_lo; k <= k_hi; ++k) acc += taps[k] * x[i + delay - k];
    y[i] = acc;
  }
  return y;
}

AudioClip resample(const AudioClip& clip, int target_rate) {
  if (target_rate <= 0 || clip.sample_rate <= 0) throw Error(ErrorKind::Parameter, "sample rates must be positive");
  if (target_rate == clip.sample_rate) return clip;
  const int g = std::gcd(target_rate, clip.sample_rate);
  const std::int64_t up = target_rate / g;
  const std::int64_t down = clip.sample_rate / g;
  if (up > 1024 || down > 1024)
    throw Error(ErrorKind::UnsupportedRatio, "resampling ratio " + std::to_string(up) + "/" +
                                                 std::to_string(down) + " exceeds 1024");

  // Anti-imaging / anti-aliasing filter at the upsampled rate, cutoff
  // min(pi/L, pi/M), 16 zero crossings on each side.
  const std::int64_t factor = std::max(up, down);
  const std::int64_t taps = 2 * 16 * factor + 1;
  const Eigen::VectorXd h =
      design_fir_lowpass(0.5 / double(factor), 1.0, int(taps)) * double(up);
  const std::int64_t delay = (taps - 1) / 2;

  const auto n = std::int64_t(clip.samples.size());
  const auto out_len = std::int64_t(std::llround(double(n) * double(up) / double(down)));
  AudioClip out;
  out.sample_rate = target_rate;
  out.source_bit_depth = clip.source_bit_depth;
  out.samples.resize(out_len);
  for (std::int64_t m = 0; m < out_len; ++m) {
    // y[m] = sum_k x[k] h[m*M - k*L + delay]
    const std::int64_t pos = m * down + delay;
    std::int64_t k_hi = pos / up;
    const std::int64_t lo_num = pos - (taps - 1);
    std::int64_t k_lo = lo_num <= 0 ? 0 : (lo_num + up - 1) / up;
    k_hi = std::min(k_hi, n - 1);
    double acc = 0.0;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) acc += clip.samples[k] * h[pos - k * up];
    out.samples[m] = acc;
  }
  return out;
}

namespace {

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
    s.replace(pos, from.size(), to);
  return s;
}

AudioClip external_roundtrip(const AudioClip& clip, const ExternalCompressAttack& params) {
  if (params.command.empty()) throw Error(ErrorKind::ExternalTool, "no external encoder command configured");
  static std::atomic<unsigned> counter{0};
  const auto dir = std::filesystem::temp_directory_path();
  const std::string stem = "wmark-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  const auto in_path = dir / (stem + "-in.wav");
  const auto out_path = dir / (stem + "-out.wav");
  write_wav(clip, in_path);

  std::string cmd = replace_all(params.command, "{in}", in_path.string());
  cmd = replace_all(cmd, "{out}", out_path.string());
  cmd = replace_all(cmd, "{bitrate}", std::to_string(params.bitrate_kbps));
  const int status = std::system(cmd.c_str());

  std::error_code ec;
  std::filesystem::remove(in_path, ec);
  if (status != 0 || !std::filesystem::exists(out_path)) {
    std::filesystem::remove(out_path, ec);
    throw Error(ErrorKind::ExternalTool, "external encoder failed (status " + std::to_string(status) + "): " + cmd);
  }
  AudioClip decoded = read_wav(out_path, {.downmix_stereo = true});
  std::filesystem::remove(out_path, ec);
  if (decoded.sample_rate != clip.sample_rate) decoded = resample(decoded, clip.sample_rate);
  return decoded;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string AttackSpec::kind() const {
  return std::visit(overloaded{
                        [](const NoiseAttack&) { return std::string("noise"); },
                        [](const CropAttack&) { return std::string("crop"); },
                        [](const ResampleAttack&) { return std::string("resample"); },
                        [](const RequantizeAttack&) { return std::string("requantize"); },
                        [](const LowpassAttack&) { return std::string("lowpass"); },
                        [](const ExternalCompressAttack&) { return std::string("external_compress"); },
                    },
                    params);
}

std::string AttackSpec::parameter() const {
  return std::visit(overloaded{
                        [](const NoiseAttack& a) { return format_number(a.variance); },
                        [](const CropAttack& a) { return format_number(a.fraction); },
                        [](const ResampleAttack& a) { return std::to_string(a.intermediate_rate); },
                        [](const RequantizeAttack& a) { return std::to_string(a.intermediate_bits); },
                        [](const LowpassAttack& a) { return format_number(a.cutoff_hz); },
                        [](const ExternalCompressAttack& a) { return std::to_string(a.bitrate_kbps) + "k"; },
                    },
                    params);
}

AudioClip apply_attack(const AudioClip& clip, const AttackSpec& spec) {
  AudioClip out = clip;
  std::visit(overloaded{
                 [&](const NoiseAttack& a) { out.samples = add_gaussian_noise(clip.samples, a.variance, spec.seed); },
                 [&](const CropAttack& a) { out.samples = crop(clip.samples, a.fraction, spec.seed); },
                 [&](const ResampleAttack& a) {
                   if (a.intermediate_rate <= 0) throw Error(ErrorKind::Parameter, "intermediate rate must be positive");
                   out = resample(resample(clip, a.intermediate_rate), clip.sample_rate);
                 },
                 [&](const RequantizeAttack& a) { out.samples = requantize(clip.samples, a.intermediate_bits); },
                 [&](const LowpassAttack& a) {
                   out.samples = filter_zero_delay(clip.samples, design_fir_lowpass(a.cutoff_hz, clip.sample_rate, a.taps));
                 },
                 [&](const ExternalCompressAttack& a) { out = external_roundtrip(clip, a); },
             },
             spec.params);
  return out;
}

}  // namespace wmark
