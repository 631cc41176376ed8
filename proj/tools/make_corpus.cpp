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

// wmark-corpus: writes the synthetic six-clip corpus as 16-bit WAV files.

#include "wmark/corpus.hpp"
#include "wmark/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Write the synthetic desk corpus (speech, blues, classic, rock, jazz, pop)"};
  std::string dir;
  wmark::corpus::CorpusOptions options;
  app.add_option("dir", dir, "output directory")->required();
  app.add_option("--seconds", options.seconds, "clip length in seconds")->check(CLI::PositiveNumber);
  app.add_option("--seed", options.seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& p : wmark::corpus::write_corpus(wmark::corpus::desk_corpus(options), dir))
      std::cout << p.string() << '\n';
  } catch (const wmark::Error& e) {
    std::cerr << "error: " << wmark::to_string(e.kind()) << ": " << e.what() << '\n';
    return e.exit_code();
  }
  return 0;
}
