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

// Synthetic six-clip test corpus: one speech-like clip and five music-like
// clips (blues, classic, rock, jazz, pop), 16 kHz mono, fully determined by
// the generator seed.

#include "wmark/audio_io.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace wmark::corpus {

struct NamedClip {
  std::string id;
  AudioClip clip;
};

struct CorpusOptions {
  double seconds = 12.0;
  int sample_rate = 16000;
  std::uint64_t seed = 2020;
};

std::vector<NamedClip> desk_corpus(const CorpusOptions& options = {});

/// Writes <dir>/<id>.wav for every clip; returns the paths in corpus order.
std::vector<std::filesystem::path> write_corpus(const std::vector<NamedClip>& clips,
                                                const std::filesystem::path& dir);

/// Reads every *.wav in a directory, sorted by filename.
std::vector<NamedClip> read_corpus(const std::filesystem::path& dir);

}  // namespace wmark::corpus
