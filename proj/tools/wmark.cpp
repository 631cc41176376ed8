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

// wmark: batch front end for embedding, extraction, attacks and analysis.
//
//   wmark embed   -i in.wav -o marked.wav [--level 2 --band low ...]
//   wmark extract -i marked.wav [--key-poly 12 --key-seed 1]
//   wmark attack  -i marked.wav -o attacked.wav --kind noise --variance 0.01
//   wmark analyze -i in.wav -o stats.csv [--bases haar,db2 --levels 10]
//   wmark report  --corpus dir -o robustness.csv --imperceptibility-out imp.csv
//
// Every subcommand also accepts --config FILE: flat "key = value" lines
// naming long flags without the dashes. Flags on the command line win.

#include "wmark/attacks.hpp"
#include "wmark/audio_io.hpp"
#include "wmark/corpus.hpp"
#include "wmark/error.hpp"
#include "wmark/metrics.hpp"
#include "wmark/prng.hpp"
#include "wmark/report.hpp"
#include "wmark/watermark.hpp"
#include "wmark/wavelet.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace wmark;

struct RunConfig {
  std::string input;
  std::string output;
  std::string basis = "haar";
  int level = 1;
  std::string band = "low";
  std::string energy = "high";
  double alpha = 1.0;
  std::size_t bits = 31;
  std::size_t min_run = 16;
  std::string key_poly;
  std::string key_seed;
  std::string method = "interpolation";
  bool downmix = false;

  // attack
  std::string kind;
  double variance = 0.01;
  double fraction = 0.1;
  int rate = 8000;
  int qbits = 8;
  double cutoff = 2000.0;
  int taps = 101;
  std::string command;
  int bitrate = 16;
  std::uint64_t seed = 0;

  // analyze / report
  std::vector<std::string> bases;
  int max_level = 10;
  int bins = 50;
  std::string hist_output;
  std::string corpus;
  std::string imperceptibility_output;
  std::vector<int> levels = {1, 2, 3, 4};
  std::string encoder;
  unsigned threads = 1;
};

std::uint32_t parse_hex(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(s, &used, 16);
    if (used != s.size() || v > 0xffffffffUL) throw std::invalid_argument(s);
    return static_cast<std::uint32_t>(v);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Config, std::string(what) + " must be hexadecimal, got '" + s + "'");
  }
}

WatermarkKey key_from(const RunConfig& rc) {
  WatermarkKey key;
  if (!rc.key_poly.empty()) key.polynomial = parse_hex(rc.key_poly, "key polynomial");
  if (!rc.key_seed.empty()) key.seed = parse_hex(rc.key_seed, "key seed");
  key.length = rc.bits;
  return key;
}

EmbedConfig embed_config_from(const RunConfig& rc) {
  EmbedConfig cfg;
  cfg.basis = rc.basis;
  cfg.level = rc.level;
  cfg.band = parse_band(rc.band);
  cfg.energy_mode = parse_energy_mode(rc.energy);
  cfg.alpha = rc.alpha;
  cfg.n_bits = rc.bits;
  cfg.min_silence_run = rc.min_run;
  cfg.validate();
  return cfg;
}

AttackSpec attack_from(const RunConfig& rc) {
  AttackSpec spec;
  spec.seed = rc.seed;
  if (rc.kind == "noise") spec.params = NoiseAttack{rc.variance};
  else if (rc.kind == "crop") spec.params = CropAttack{rc.fraction};
  else if (rc.kind == "resample") spec.params = ResampleAttack{rc.rate};
  else if (rc.kind == "requantize") spec.params = RequantizeAttack{rc.qbits};
  else if (rc.kind == "lowpass") spec.params = LowpassAttack{rc.cutoff, rc.taps};
  else if (rc.kind == "external_compress") spec.params = ExternalCompressAttack{rc.command, rc.bitrate};
  else throw Error(ErrorKind::Config, "unknown attack kind '" + rc.kind + "'");
  return spec;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  return out;
}

void add_embedding_options(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--basis", rc.basis, "wavelet basis: haar, db1..db4");
  sub->add_option("--level", rc.level, "DWT depth used for embedding");
  sub->add_option("--band", rc.band, "coefficient band: low (approximation) or high (detail)");
  sub->add_option("--energy", rc.energy, "anchor region: high or low energy");
  sub->add_option("--alpha", rc.alpha, "embedding strength");
  sub->add_option("--bits", rc.bits, "watermark length (one bit per segment)");
  sub->add_option("--min-run", rc.min_run, "shortest zero run treated as silence");
}

void add_key_options(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--key-poly", rc.key_poly, "feedback polynomial tap mask, hex (default 12 = x^5+x^2+1)");
  sub->add_option("--key-seed", rc.key_seed, "LFSR seed, hex (default 1)");
}

int cmd_embed(const RunConfig& rc) {
  const auto cfg = embed_config_from(rc);
  const auto clip = read_wav(rc.input, {.downmix_stereo = rc.downmix});
  const auto key = key_from(rc);
  AudioClip marked;
  if (rc.method == "interpolation") marked = embed(clip, key, cfg);
  else if (rc.method == "replacement") marked = embed_replacement_baseline(clip, key, cfg);
  else throw Error(ErrorKind::Config, "unknown method '" + rc.method + "'");
  const auto clipped = (marked.samples.array().abs() > 1.0).count();
  if (clipped > 0)
    std::fprintf(stderr, "warning: %ld samples exceed full scale and were clipped on write; "
                         "extraction from the file may lose bits\n", long(clipped));
  write_wav(marked, rc.output);
  std::printf("I %.6f dB\n", imperceptibility(clip, marked));
  return 0;
}

int cmd_extract(const RunConfig& rc) {
  const auto cfg = embed_config_from(rc);
  const auto clip = read_wav(rc.input, {.downmix_stereo = rc.downmix});
  const auto bits = extract(clip, cfg);
  const auto line = to_string(bits);
  if (!rc.output.empty()) open_output(rc.output) << line << '\n';
  std::printf("%s\n", line.c_str());
  if (!rc.key_poly.empty() || !rc.key_seed.empty())
    std::printf("BER %.4f\n", ber(lfsr_generate(key_from(rc)), bits));
  return 0;
}

int cmd_attack(const RunConfig& rc) {
  const auto clip = read_wav(rc.input, {.downmix_stereo = rc.downmix});
  write_wav(apply_attack(clip, attack_from(rc)), rc.output);
  return 0;
}

int cmd_analyze(const RunConfig& rc) {
  const auto clip = read_wav(rc.input, {.downmix_stereo = rc.downmix});
  std::vector<std::string> bases = rc.bases;
  if (bases.empty())
    for (auto b : supported_bases()) bases.emplace_back(b);

  auto out = open_output(rc.output);
  std::ofstream hist;
  if (!rc.hist_output.empty()) {
    hist = open_output(rc.hist_output);
    hist << "basis,level,band,bin,lower,upper,count\n";
  }
  out << "basis,level,band,count,mean,variance,energy,zero_crossing_rate\n";
  out.precision(9);
  hist.precision(9);
  for (const auto& name : bases) {
    const auto basis = make_basis(name);
    for (const auto& s : level_survey(clip.samples, basis, rc.max_level, rc.bins)) {
      out << name << ',' << s.level << ',' << s.band << ',' << s.count << ',' << s.mean << ','
          << s.variance << ',' << s.energy << ',' << s.zero_crossing_rate << '\n';
      if (hist) {
        for (std::size_t b = 0; b < s.hist.counts.size(); ++b)
          hist << name << ',' << s.level << ',' << s.band << ',' << b << ',' << s.hist.edges[b] << ','
               << s.hist.edges[b + 1] << ',' << s.hist.counts[b] << '\n';
      }
    }
  }
  return 0;
}

int cmd_report(const RunConfig& rc) {
  ReportConfig cfg;
  cfg.embed = embed_config_from(rc);
  cfg.levels = rc.levels;
  cfg.key = key_from(rc);
  cfg.threads = rc.threads;
  cfg.attacks = standard_attacks(rc.seed, rc.encoder.empty() ? std::nullopt : std::optional(rc.encoder));
  const auto clips = corpus::read_corpus(rc.corpus);
  const auto report = run_report(clips, cfg);
  {
    auto out = open_output(rc.output);
    write_robustness_csv(report.robustness, out);
  }
  if (!rc.imperceptibility_output.empty()) {
    auto out = open_output(rc.imperceptibility_output);
    write_imperceptibility_csv(report.imperceptibility, out);
  }
  return 0;
}

// Expands "--config FILE" into "--key value" tokens placed right after the
// subcommand so that later command-line flags take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] != "--config") continue;
    std::ifstream in(args[i + 1]);
    if (!in) throw Error(ErrorKind::Config, "cannot read config file " + args[i + 1]);
    std::vector<std::string> injected;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos)
        throw Error(ErrorKind::Config, args[i + 1] + ":" + std::to_string(lineno) + ": expected key = value");
      const auto key = trim(line.substr(0, eq));
      const auto value = trim(line.substr(eq + 1));
      if (value == "true") {
        injected.push_back("--" + key);
      } else if (value != "false") {
        injected.push_back("--" + key);
        injected.push_back(value);
      }
    }
    args.erase(args.begin() + long(i), args.begin() + long(i) + 2);
    args.insert(args.begin() + 1, injected.begin(), injected.end());
    break;
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind DWT-domain audio watermarking toolkit"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  RunConfig rc;

  auto* embed_cmd = app.add_subcommand("embed", "embed the keyed watermark into a WAV file");
  embed_cmd->add_option("-i,--input", rc.input, "input WAV")->required()->check(CLI::ExistingFile);
  embed_cmd->add_option("-o,--output", rc.output, "watermarked WAV")->required();
  embed_cmd->add_option("--method", rc.method, "interpolation (default) or replacement");
  add_embedding_options(embed_cmd, rc);
  add_key_options(embed_cmd, rc);

  auto* extract_cmd = app.add_subcommand("extract", "blindly extract the watermark bits");
  extract_cmd->add_option("-i,--input", rc.input, "watermarked WAV")->required()->check(CLI::ExistingFile);
  extract_cmd->add_option("-o,--output", rc.output, "also write the bit line to this file");
  add_embedding_options(extract_cmd, rc);
  add_key_options(extract_cmd, rc);

  auto* attack_cmd = app.add_subcommand("attack", "apply one attack to a WAV file");
  attack_cmd->add_option("-i,--input", rc.input, "input WAV")->required()->check(CLI::ExistingFile);
  attack_cmd->add_option("-o,--output", rc.output, "attacked WAV")->required();
  attack_cmd->add_option("--kind", rc.kind, "noise | crop | resample | requantize | lowpass | external_compress")
      ->required();
  attack_cmd->add_option("--variance", rc.variance, "noise variance");
  attack_cmd->add_option("--fraction", rc.fraction, "crop fraction");
  attack_cmd->add_option("--rate", rc.rate, "intermediate sample rate in Hz");
  attack_cmd->add_option("--qbits", rc.qbits, "intermediate bit depth");
  attack_cmd->add_option("--cutoff", rc.cutoff, "lowpass cutoff in Hz");
  attack_cmd->add_option("--taps", rc.taps, "lowpass FIR length (odd)");
  attack_cmd->add_option("--command", rc.command, "external codec command with {in} {out} {bitrate}");
  attack_cmd->add_option("--bitrate", rc.bitrate, "external codec bitrate, kbit/s");
  attack_cmd->add_option("--seed", rc.seed, "attack RNG seed");

  auto* analyze_cmd = app.add_subcommand("analyze", "per-level subband statistics as CSV");
  analyze_cmd->add_option("-i,--input", rc.input, "input WAV")->required()->check(CLI::ExistingFile);
  analyze_cmd->add_option("-o,--output", rc.output, "statistics CSV")->required();
  analyze_cmd->add_option("--bases", rc.bases, "comma-separated bases (default: all)")->delimiter(',');
  analyze_cmd->add_option("--levels", rc.max_level, "deepest level to analyse")->check(CLI::Range(1, 20));
  analyze_cmd->add_option("--bins", rc.bins, "histogram bins")->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--hist-out", rc.hist_output, "histogram CSV");

  auto* report_cmd = app.add_subcommand("report", "level x attack robustness matrix over a corpus");
  report_cmd->add_option("--corpus", rc.corpus, "directory of WAV files")->required()->check(CLI::ExistingDirectory);
  report_cmd->add_option("-o,--output", rc.output, "robustness CSV")->required();
  report_cmd->add_option("--imperceptibility-out", rc.imperceptibility_output,
                         "interpolation vs replacement imperceptibility CSV");
  report_cmd->add_option("--levels", rc.levels, "comma-separated embedding levels")->delimiter(',');
  report_cmd->add_option("--seed", rc.seed, "global seed for attack randomness");
  report_cmd->add_option("--encoder", rc.encoder, "external codec command template (adds a compression row)");
  report_cmd->add_option("--threads", rc.threads, "worker threads");
  add_embedding_options(report_cmd, rc);
  add_key_options(report_cmd, rc);

  for (auto* sub : {embed_cmd, extract_cmd, attack_cmd, analyze_cmd, report_cmd}) {
    sub->add_flag("--downmix", rc.downmix, "average stereo input to mono");
  }

  try {
    auto args = expand_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.exit_code();
  }

  try {
    if (*embed_cmd) return cmd_embed(rc);
    if (*extract_cmd) return cmd_extract(rc);
    if (*attack_cmd) return cmd_attack(rc);
    if (*analyze_cmd) return cmd_analyze(rc);
    if (*report_cmd) return cmd_report(rc);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
