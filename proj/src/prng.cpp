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

#include "wmark/prng.hpp"

#include "wmark/error.hpp"

#include <bit>

namespace wmark {

int polynomial_degree(std::uint32_t polynomial) { return std::bit_width(polynomial); }

std::vector<std::uint8_t> lfsr_generate(const WatermarkKey& key) {
  const int degree = polynomial_degree(key.polynomial);
  if (degree < 2 || degree > 31)
    throw Error(ErrorKind::Parameter, "feedback polynomial degree must be in [2, 31]");
  if (key.seed == 0) throw Error(ErrorKind::DegenerateKey, "LFSR seed must be nonzero");
  if (key.seed >> degree)
    throw Error(ErrorKind::Parameter, "seed has bits above the register degree " + std::to_string(degree));
  if (key.length == 0) throw Error(ErrorKind::Parameter, "watermark length must be at least 1");

  // Exponent k taps the stage k places above the output end, so x^m always
  // taps the output stage itself.
  std::uint32_t feedback_mask = 0;
  for (int k = 1; k <= degree; ++k)
    if (key.polynomial & (1u << (k - 1))) feedback_mask |= 1u << (degree - k);

  std::vector<std::uint8_t> bits;
  bits.reserve(key.length);
  std::uint32_t state = key.seed;
  for (std::size_t i = 0; i < key.length; ++i) {
    bits.push_back(static_cast<std::uint8_t>(state & 1u));
    const auto feedback = static_cast<std::uint32_t>(std::popcount(state & feedback_mask) & 1);
    state = (state >> 1) | (feedback << (degree - 1));
  }
  return bits;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

}  // namespace wmark
