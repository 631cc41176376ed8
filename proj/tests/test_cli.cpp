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

#include "wmark/audio_io.hpp"

#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(WMARK_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), int(buf.size()), p)) r.out += buf.data();
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("wmark-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// 120 Hz tone at -3 dBFS with a little texture. The level-2 approximation
// peaks near 1.4, comfortably above alpha, and the output stays in range.
fs::path write_tone(const fs::path& dir, Eigen::Index n = 32000) {
  wmark::AudioClip c{Eigen::VectorXd(n), 16000, 16};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = double(i) / 16000;
    c.samples[i] = 0.6 * std::sin(2 * std::numbers::pi * 120 * t) + 0.1 * std::sin(2 * std::numbers::pi * 2300 * t);
  }
  const auto p = dir / "tone.wav";
  wmark::write_wav(c, p);
  return p;
}

}  // namespace

TEST_CASE("embed then extract through files") {
  TempDir tmp;
  const auto in = write_tone(tmp.path);
  const auto before = slurp(in);
  const auto marked = tmp.path / "marked.wav";

  auto e = run("embed -i " + in.string() + " -o " + marked.string() + " --level 2");
  REQUIRE_MESSAGE(e.status == 0, e.out);
  CHECK(e.out.find("I ") == 0);
  CHECK(e.out.find("warning") == std::string::npos);
  CHECK(slurp(in) == before);

  auto x = run("extract -i " + marked.string() + " --level 2 --key-seed 1 -o " + (tmp.path / "bits.txt").string());
  REQUIRE_MESSAGE(x.status == 0, x.out);
  CHECK(x.out.find("BER 0.0000") != std::string::npos);
  CHECK(slurp(tmp.path / "bits.txt") == "1000010101110110001111100110100\n");
  CHECK(x.out.find("1000010101110110001111100110100") == 0);
}

TEST_CASE("capacity error exits nonzero with a category") {
  TempDir tmp;
  const auto in = write_tone(tmp.path, 900);
  auto r = run("embed -i " + in.string() + " -o " + (tmp.path / "m.wav").string() + " --level 4");
  CHECK(r.status != 0);
  CHECK(r.out.find("error: capacity") != std::string::npos);
  CHECK_FALSE(fs::exists(tmp.path / "m.wav"));
}

TEST_CASE("usage errors") {
  auto r = run("embed");
  CHECK(r.status == 2);
  CHECK(r.out.find("error: usage") != std::string::npos);
  TempDir tmp;
  const auto in = write_tone(tmp.path, 4000);
  r = run("embed -i " + in.string() + " -o " + (tmp.path / "m.wav").string() + " --basis sym8");
  CHECK(r.status != 0);
  CHECK(r.out.find("unsupported-basis") != std::string::npos);
}

TEST_CASE("config file with command-line override") {
  TempDir tmp;
  const auto in = write_tone(tmp.path);
  const auto cfg = tmp.path / "wm.conf";
  std::ofstream(cfg) << "# embedding profile\nlevel = 4\nbasis = db2\n";
  const auto a = tmp.path / "a.wav";
  const auto b = tmp.path / "b.wav";
  REQUIRE(run("embed -i " + in.string() + " -o " + a.string() + " --config " + cfg.string() + " --level 2").status == 0);
  REQUIRE(run("embed -i " + in.string() + " -o " + b.string() + " --level 2 --basis db2").status == 0);
  CHECK(slurp(a) == slurp(b));

  std::ofstream(tmp.path / "bad.conf") << "level 3\n";
  auto r = run("embed -i " + in.string() + " -o " + a.string() + " --config " + (tmp.path / "bad.conf").string());
  CHECK(r.status != 0);
  CHECK(r.out.find("error: config") != std::string::npos);
}

TEST_CASE("attack and analyze") {
  TempDir tmp;
  const auto in = write_tone(tmp.path);
  const auto out = tmp.path / "q.wav";
  REQUIRE(run("attack -i " + in.string() + " -o " + out.string() + " --kind requantize --qbits 8").status == 0);
  const auto q = wmark::read_wav(out);
  CHECK(q.size() == 32000);

  const auto csv = tmp.path / "stats.csv";
  REQUIRE(run("analyze -i " + in.string() + " -o " + csv.string() + " --bases haar,db4 --levels 3").status == 0);
  std::istringstream lines(slurp(csv));
  std::string line;
  std::getline(lines, line);
  CHECK(line == "basis,level,band,count,mean,variance,energy,zero_crossing_rate");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 2 * 7);
}

TEST_CASE("report is byte-identical across runs") {
  TempDir tmp;
  const auto corpus = tmp.path / "corpus";
  REQUIRE(std::system((std::string(WMARK_CORPUS_TOOL) + " " + corpus.string() + " --seconds 2 > /dev/null").c_str()) == 0);
  const auto a = tmp.path / "a.csv";
  const auto b = tmp.path / "b.csv";
  const auto ia = tmp.path / "ia.csv";
  const std::string common = "report --corpus " + corpus.string() + " --levels 1,3 --seed 5 ";
  REQUIRE(run(common + "--threads 1 -o " + a.string() + " --imperceptibility-out " + ia.string()).status == 0);
  REQUIRE(run(common + "--threads 3 -o " + b.string()).status == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).rfind("audio_id,basis,level,band,energy_mode,attack,parameter,I_dB,BER,unreadable_count\n", 0) == 0);
  // 6 clips x 2 levels x (8 attacks + none), plus the header.
  std::istringstream lines(slurp(a));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) ++n;
  CHECK(n == 1 + 6 * 2 * 9);
  CHECK(slurp(ia).rfind("audio_id,basis,level,I_interpolation_dB,I_replacement_dB\n", 0) == 0);
}
