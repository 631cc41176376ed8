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

#include "wmark/report.hpp"

#include "wmark/metrics.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <thread>

namespace wmark {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::uint64_t attack_seed(std::uint64_t global_seed, std::size_t attack_index) {
  return global_seed ^ splitmix64(attack_index);
}

std::vector<AttackSpec> standard_attacks(std::uint64_t global_seed,
                                         const std::optional<std::string>& encoder_command) {
  std::vector<AttackParams> params = {
      NoiseAttack{0.01},      CropAttack{0.1},          ResampleAttack{8000},
      ResampleAttack{44100},  RequantizeAttack{8},      LowpassAttack{2000.0, 101},
      LowpassAttack{3200.0, 101}, LowpassAttack{6000.0, 101},
  };
  if (encoder_command) params.push_back(ExternalCompressAttack{*encoder_command, 16});
  std::vector<AttackSpec> specs;
  for (std::size_t i = 0; i < params.size(); ++i) specs.push_back({params[i], attack_seed(global_seed, i)});
  return specs;
}

Report run_report(const std::vector<corpus::NamedClip>& clips, const ReportConfig& cfg) {
  const std::size_t cells = clips.size() * cfg.levels.size();
  const std::size_t rows_per_cell = cfg.attacks.size() + 1;
  Report report;
  report.robustness.resize(cells * rows_per_cell);
  report.imperceptibility.resize(cells);

  auto run_cell = [&](std::size_t cell) {
    const auto& clip = clips[cell / cfg.levels.size()];
    EmbedConfig ec = cfg.embed;
    ec.level = cfg.levels[cell % cfg.levels.size()];
    WatermarkKey key = cfg.key;
    key.length = ec.n_bits;
    const auto payload = lfsr_generate(key);

    const AudioClip marked = embed(clip.clip, key, ec);
    const AudioClip baseline = embed_replacement_baseline(clip.clip, key, ec);
    report.imperceptibility[cell] = {clip.id, ec.basis, ec.level, imperceptibility(clip.clip, marked),
                                     imperceptibility(clip.clip, baseline)};

    auto fill = [&](std::size_t slot, const std::string& attack, const std::string& parameter,
                    const AudioClip& received) {
      ReportRow row{clip.id, ec.basis, ec.level, ec.band, ec.energy_mode, attack, parameter};
      row.imperceptibility_db = imperceptibility(clip.clip, received);
      try {
        const auto bits = extract(received, ec);
        row.ber = ber(payload, bits);
        row.unreadable = unreadable_count(bits);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Capacity && e.kind() != ErrorKind::EmptyVoiced) throw;
        row.ber = 1.0;
        row.unreadable = ec.n_bits;
      }
      report.robustness[cell * rows_per_cell + slot] = std::move(row);
    };
    fill(0, "none", "-", marked);
    for (std::size_t a = 0; a < cfg.attacks.size(); ++a) {
      const auto& spec = cfg.attacks[a];
      fill(a + 1, spec.kind(), spec.parameter(), apply_attack(marked, spec));
    }
  };

  // Cells are claimed in any order but land in fixed slots, so output order
  // does not depend on scheduling.
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t cell; !failed && (cell = next++) < cells;) {
      try {
        run_cell(cell);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, unsigned(cells ? cells : 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

void write_robustness_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "audio_id,basis,level,band,energy_mode,attack,parameter,I_dB,BER,unreadable_count\n";
  for (const auto& r : rows)
    out << r.audio_id << ',' << r.basis << ',' << r.level << ',' << to_string(r.band) << ','
        << to_string(r.energy_mode) << ',' << r.attack << ',' << r.parameter << ','
        << fixed(r.imperceptibility_db, 6) << ',' << fixed(r.ber, 4) << ',' << r.unreadable << '\n';
}

void write_imperceptibility_csv(const std::vector<ImperceptibilityRow>& rows, std::ostream& out) {
  out << "audio_id,basis,level,I_interpolation_dB,I_replacement_dB\n";
  for (const auto& r : rows)
    out << r.audio_id << ',' << r.basis << ',' << r.level << ',' << fixed(r.interpolation_db, 6) << ','
        << fixed(r.replacement_db, 6) << '\n';
}

}  // namespace wmark
