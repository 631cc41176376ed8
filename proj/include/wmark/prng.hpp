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

#include <cstdint>
#include <string>
#include <vector>

namespace wmark {

/// Feedback polynomial and initial state of a Fibonacci LFSR.
///
/// `polynomial` holds the tap exponents of a polynomial over GF(2) without
/// its constant term: bit (k-1) set means x^k is present. x^3 + x + 1 is
/// 0b101, x^5 + x^2 + 1 is 0b10010. The highest set bit gives the register
/// degree m. `seed` is the m-bit initial state, bit 0 being the output stage.
struct WatermarkKey {
  std::uint32_t polynomial = 0b10010;
  std::uint32_t seed = 0b00001;
  std::size_t length = 31;
};

int polynomial_degree(std::uint32_t polynomial);

/// Emits key.length bits. Each step outputs the lowest stage, shifts the
/// register down and feeds the XOR of the tapped stages into the top stage.
/// Exponent k of the polynomial taps stage (m - k) counted from the output
/// stage, so taps {3, 1} for x^3 + x + 1 read stages 0 and 2.
std::vector<std::uint8_t> lfsr_generate(const WatermarkKey& key);

/// '0'/'1' characters, no terminator.
std::string bits_to_string(const std::vector<std::uint8_t>& bits);

}  // namespace wmark
