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

#include "wmark/corpus.hpp"

#include "wmark/attacks.hpp"
#include "wmark/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace wmark::corpus {

namespace {

constexpr double kPi = std::numbers::pi;

class Synth {
 public:
  Synth(std::size_t n, int rate, std::uint64_t seed) : buf_(Eigen::VectorXd::Zero(Eigen::Index(n))), rate_(rate), rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
  double normal() { return rng_.normal(); }
  int rate() const { return rate_; }
  Eigen::Index size() const { return buf_.size(); }
  Eigen::VectorXd& buffer() { return buf_; }

  Eigen::Index at(double t) const { return Eigen::Index(std::llround(t * rate_)); }

  /// Harmonic tone with exponential decay and a short linear attack.
  void tone(double t0, double dur, double f0, double amp, int harmonics, double rolloff, double decay,
            double attack = 0.004, double vibrato = 0.0) {
    const Eigen::Index start = at(t0);
    const Eigen::Index len = at(dur);
    for (Eigen::Index i = 0; i < len && start + i < size(); ++i) {
      const double t = double(i) / rate_;
      double env = std::exp(-t / decay) * std::min(1.0, t / attack);
      const double release = dur - t;
      if (release < 0.01) env *= release / 0.01;
      const double phase = 2 * kPi * f0 * t + vibrato * std::sin(2 * kPi * 5.5 * t);
      double v = 0.0;
      for (int h = 1; h <= harmonics; ++h) {
        if (f0 * h >= 0.45 * rate_) break;
        v += std::pow(rolloff, h - 1) * std::sin(h * phase);
      }
      buf_[start + i] += amp * env * v;
    }
  }

  void kick(double t0, double amp) {
    const Eigen::Index start = at(t0);
    double phase = 0.0;
    for (Eigen::Index i = 0; i < at(0.25) && start + i < size(); ++i) {
      const double t = double(i) / rate_;
      const double f = 48.0 + 110.0 * std::exp(-t / 0.03);
      phase += 2 * kPi * f / rate_;
      buf_[start + i] += amp * std::exp(-t / 0.09) * std::sin(phase) * std::min(1.0, t / 0.001);
    }
  }

  void noise_burst(double t0, double dur, double amp, double decay, double highpass) {
    const Eigen::Index start = at(t0);
    double prev = 0.0;
    for (Eigen::Index i = 0; i < at(dur) && start + i < size(); ++i) {
      const double t = double(i) / rate_;
      const double w = normal();
      const double v = w - highpass * prev;
      prev = w;
      buf_[start + i] += amp * std::exp(-t / decay) * v;
    }
  }

  void snare(double t0, double amp) {
    noise_burst(t0, 0.18, 0.6 * amp, 0.05, 0.5);
    tone(t0, 0.12, 185.0, 0.5 * amp, 2, 0.4, 0.04, 0.001);
  }

  void hat(double t0, double amp) { noise_burst(t0, 0.05, amp, 0.012, 0.95); }

 private:
  Eigen::VectorXd buf_;
  int rate_;
  AttackRng rng_;
};

double midi_hz(double note) { return 440.0 * std::pow(2.0, (note - 69.0) / 12.0); }

// Two-pole resonator, unity gain at its centre frequency.
struct Resonator {
  double a1, a2, g;
  double y1 = 0, y2 = 0;
  Resonator(double freq, double bandwidth, int rate) {
    const double r = std::exp(-kPi * bandwidth / rate);
    a1 = 2 * r * std::cos(2 * kPi * freq / rate);
    a2 = -r * r;
    g = 1 - r;
  }
  double step(double x) {
    const double y = g * x + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    return y;
  }
};

Eigen::VectorXd speech(std::size_t n, int rate, std::uint64_t seed) {
  Synth s(n, rate, seed);
  struct Vowel { double f1, f2, f3; };
  constexpr std::array<Vowel, 5> vowels = {{{730, 1090, 2440}, {270, 2290, 3010}, {300, 870, 2240},
                                            {530, 1840, 2480}, {570, 840, 2410}}};
  auto& out = s.buffer();
  double t = 0.05;
  const double total = double(n) / rate;
  while (t < total - 0.1) {
    const double dur = s.uniform(0.17, 0.30);
    const Eigen::Index start = s.at(t);
    const Eigen::Index len = std::min<Eigen::Index>(s.at(dur), s.size() - start);
    Eigen::VectorXd syl = Eigen::VectorXd::Zero(len);

    if (s.uniform(0, 1) < 0.35) {
      // Fricative onset.
      const Eigen::Index fl = std::min<Eigen::Index>(s.at(0.05), len);
      double prev = 0;
      for (Eigen::Index i = 0; i < fl; ++i) {
        const double w = s.normal();
        syl[i] += 0.08 * (w - 0.9 * prev);
        prev = w;
      }
    }

    const auto& v = vowels[std::size_t(s.uniform(0, 5)) % 5];
    Resonator r1(v.f1, 90, rate), r2(v.f2, 120, rate), r3(v.f3, 180, rate);
    const double f_start = s.uniform(105, 210);
    const double f_end = f_start * s.uniform(0.75, 1.15);
    double phase = 0.0;
    for (Eigen::Index i = 0; i < len; ++i) {
      const double x = double(i) / double(len);
      const double f0 = f_start + (f_end - f_start) * x;
      phase += f0 / rate;
      const double p = phase - std::floor(phase);
      // Rosenberg-style glottal pulse: open phase 60%, closing phase 25%.
      double g = 0.0;
      if (p < 0.6) g = 0.5 * (1 - std::cos(kPi * p / 0.6));
      else if (p < 0.85) g = std::cos(0.5 * kPi * (p - 0.6) / 0.25);
      const double env = std::sin(kPi * std::min(1.0, x * 1.15)) * (x < 0.87 ? 1.0 : 1.0);
      const double source = env * (g - 0.4);
      syl[i] += 0.55 * source + 2.2 * r1.step(source) + 1.4 * r2.step(source) + 0.7 * r3.step(source);
    }
    const double peak = syl.cwiseAbs().maxCoeff();
    const double target = s.uniform(0.7, 0.95);
    out.segment(start, len) += syl * (peak > 0 ? target / peak : 0.0);
    t += dur + s.uniform(0.02, 0.07);
  }
  return out;
}

struct Style {
  const char* id;
  double bpm;
  int root;                    // midi note of the bass root
  std::array<int, 4> progression;
  double swing;
  bool drums;
  bool four_on_floor;
  int lead_harmonics;
  double lead_rolloff;
  double distortion;
};

Eigen::VectorXd music(const Style& st, std::size_t n, int rate, std::uint64_t seed) {
  Synth s(n, rate, seed);
  const double beat = 60.0 / st.bpm;
  const double eighth = beat / 2;
  const double total = double(n) / rate;
  constexpr std::array<int, 7> scale = {0, 2, 3, 5, 7, 9, 10};

  int step = 0;
  for (double t = 0.02; t < total - 0.05; t += eighth, ++step) {
    const double tt = t + ((step % 2) ? st.swing * eighth : 0.0);
    const int bar = (step / 8) % 4;
    const int chord = st.root + st.progression[std::size_t(bar)];
    const bool on_beat = step % 2 == 0;

    // Bass: every eighth, root or fifth.
    const int bass_note = chord + ((step % 4 == 2) ? 7 : 0);
    s.tone(tt, eighth * 0.95, midi_hz(bass_note), on_beat ? 0.42 : 0.32, 4, 0.45, 0.25, 0.003);

    if (st.drums) {
      if (st.four_on_floor ? on_beat : (step % 8 == 0 || step % 8 == 5)) s.kick(tt, 0.8);
      if (step % 8 == 2 || step % 8 == 6) s.snare(tt, 0.45);
      s.hat(tt, 0.09);
    }

    // Chord stabs on beats, lead melody on some eighths.
    if (on_beat) {
      for (int iv : {12, 16, 19}) s.tone(tt, beat * 0.9, midi_hz(chord + iv), 0.07, 6, 0.6, 0.35, 0.01);
    }
    if (s.uniform(0, 1) < 0.6) {
      const int degree = int(s.uniform(0, 7)) % 7;
      const int note = chord + 24 + scale[std::size_t(degree)];
      s.tone(tt, eighth * s.uniform(0.8, 1.9), midi_hz(note), 0.12, st.lead_harmonics, st.lead_rolloff,
             0.4, 0.02, st.swing > 0 ? 0.02 : 0.0);
    }
  }
  auto& out = s.buffer();
  if (st.distortion > 0) out = out.unaryExpr([&](double v) { return std::tanh(st.distortion * v) / st.distortion; });
  return out;
}

// One-pole lowpass blended with the dry signal: gives the clip a falling
// long-term spectrum above `corner` Hz like recorded programme material.
void tilt(Eigen::VectorXd& x, double corner, double dry, int rate) {
  const double a = std::exp(-2 * kPi * corner / rate);
  double y = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    y = (1 - a) * x[i] + a * y;
    x[i] = dry * x[i] + (1 - dry) * y;
  }
}

// Mastering-style levelling: a slow peak-following gain brings every local
// window close to full scale, then a soft limiter catches the overs.
void master(Eigen::VectorXd& x, int rate) {
  const Eigen::Index win = rate / 20;
  const Eigen::Index n = x.size();
  Eigen::VectorXd gain(n);
  double g = 1.0;
  for (Eigen::Index start = 0; start < n; start += win) {
    const Eigen::Index len = std::min(win, n - start);
    const double peak = x.segment(start, len).cwiseAbs().maxCoeff();
    const double target = peak > 1e-9 ? std::min(8.0, 0.9 / peak) : 8.0;
    for (Eigen::Index i = 0; i < len; ++i) {
      g += (target - g) * (target < g ? 0.02 : 0.0015);
      gain[start + i] = g;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) x[i] = std::tanh(1.3 * gain[i] * x[i]) / std::tanh(1.3);
}

void finish(Eigen::VectorXd& x, AttackRng& rng, int rate) {
  const double peak = x.cwiseAbs().maxCoeff();
  if (peak > 0) x /= peak;
  master(x, rate);
  const double post = x.cwiseAbs().maxCoeff();
  if (post > 0) x *= 0.95 / post;
  // Noise floor a few LSB deep so no clip contains digital silence, then
  // snap to the 16-bit grid the clips would be stored on.
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double v = x[i] + 1e-4 * rng.normal();
    x[i] = pcm16_to_float(float_to_pcm16(v));
  }
}

}  // namespace

std::vector<NamedClip> desk_corpus(const CorpusOptions& options) {
  const auto n = static_cast<std::size_t>(std::llround(options.seconds * options.sample_rate));
  const int rate = options.sample_rate;
  constexpr std::array<Style, 5> styles = {{
      {"blues", 92, 40, {0, 5, 0, 7}, 0.33, true, false, 7, 0.7, 1.5},
      {"classic", 72, 36, {0, 5, 7, 0}, 0.0, false, false, 10, 0.8, 0.0},
      {"rock", 126, 40, {0, 3, 5, 0}, 0.0, true, false, 9, 0.85, 3.0},
      {"jazz", 132, 38, {0, 5, 10, 3}, 0.25, true, false, 5, 0.55, 0.0},
      {"pop", 118, 41, {0, 7, 9, 5}, 0.0, true, true, 6, 0.6, 0.8},
  }};

  AttackRng floor_rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<NamedClip> clips;
  auto push = [&](std::string id, Eigen::VectorXd x) {
    tilt(x, 500.0, 0.2, rate);
    finish(x, floor_rng, rate);
    clips.push_back({std::move(id), AudioClip{std::move(x), rate, 16}});
  };
  push("speech", speech(n, rate, options.seed));
  std::uint64_t k = 1;
  for (const auto& st : styles) push(st.id, music(st, n, rate, options.seed + 7919 * k++));
  return clips;
}

std::vector<std::filesystem::path> write_corpus(const std::vector<NamedClip>& clips,
                                                const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  for (const auto& c : clips) {
    paths.push_back(dir / (c.id + ".wav"));
    write_wav(c.clip, paths.back());
  }
  return paths;
}

std::vector<NamedClip> read_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::Io, "corpus directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".wav") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<NamedClip> clips;
  for (const auto& f : files) clips.push_back({f.stem().string(), read_wav(f)});
  if (clips.empty()) throw Error(ErrorKind::Io, "no .wav files in " + dir.string());
  return clips;
}

}  // namespace wmark::corpus
