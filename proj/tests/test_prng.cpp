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

#include "wmark/error.hpp"
#include "wmark/prng.hpp"

#include <doctest.h>

using namespace wmark;

namespace {

// Multiplicative order of x modulo p(x) = 1 + sum of x^k for k in the mask,
// by repeated multiplication in GF(2)[x]/p. Returns 0 if x^i never returns to 1.
std::uint32_t order_of_x(std::uint32_t mask) {
  const int m = polynomial_degree(mask);
  const std::uint32_t p = (mask << 1) | 1u;  // bit k = coefficient of x^k
  std::uint32_t r = 1;
  for (std::uint32_t i = 1; i <= (1u << m); ++i) {
    r <<= 1;
    if (r & (1u << m)) r ^= p;
    if (r == 1) return i;
  }
  return 0;
}

std::size_t minimal_period(const std::vector<std::uint8_t>& s) {
  for (std::size_t p = 1; p <= s.size() / 2; ++p) {
    bool ok = true;
    for (std::size_t i = p; i < s.size() && ok; ++i) ok = s[i] == s[i - p];
    if (ok) return p;
  }
  return s.size();
}

}  // namespace

TEST_CASE("hand-traced x^3 + x + 1 sequence") {
  // Stages (s0 s1 s2) from 1 0 0: output s0, feedback s0 ^ s2 into s2.
  // 100 -> 001 -> 011 -> 111 -> 110 -> 101 -> 010 ; outputs 1 0 0 1 1 1 0
  const auto bits = lfsr_generate({0b101, 0b001, 7});
  CHECK(bits == std::vector<std::uint8_t>{1, 0, 0, 1, 1, 1, 0});
  CHECK(bits_to_string(bits) == "1001110");
}

TEST_CASE("primitive polynomials give maximal, balanced periods") {
  for (int m = 3; m <= 5; ++m) {
    const std::uint32_t period = (1u << m) - 1;
    int primitive = 0;
    for (std::uint32_t mask = 1u << (m - 1); mask < (1u << m); ++mask) {
      if (order_of_x(mask) != period) continue;
      ++primitive;
      for (std::uint32_t seed = 1; seed <= period; ++seed) {
        CAPTURE(mask);
        CAPTURE(seed);
        const auto bits = lfsr_generate({mask, seed, 2 * period});
        CHECK(minimal_period(bits) == period);
        std::size_t ones = 0;
        for (std::size_t i = 0; i < period; ++i) ones += bits[i];
        CHECK(ones == (period + 1) / 2);
      }
    }
    // phi(2^m - 1) / m primitive polynomials of degree m.
    CHECK(primitive == (m == 3 ? 2 : m == 4 ? 2 : 6));
  }
}

TEST_CASE("a non-primitive polynomial has a short period") {
  // x^4 + x^3 + x^2 + x + 1 divides x^5 - 1.
  const auto bits = lfsr_generate({0b1111, 0b0001, 30});
  CHECK(minimal_period(bits) == 5);
}

TEST_CASE("sequence repeats past its period and is deterministic") {
  const WatermarkKey key{0b10010, 0b10101, 100};
  const auto a = lfsr_generate(key);
  CHECK(a == lfsr_generate(key));
  for (std::size_t i = 31; i < a.size(); ++i) CHECK(a[i] == a[i - 31]);
}

TEST_CASE("key validation") {
  try {
    lfsr_generate({0b10010, 0, 31});
    FAIL("zero seed accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateKey);
  }
  CHECK_THROWS_AS(lfsr_generate({0b1, 1, 31}), Error);       // degree 1
  CHECK_THROWS_AS(lfsr_generate({0b10010, 0b100000, 31}), Error);  // seed wider than register
  CHECK_THROWS_AS(lfsr_generate({0b10010, 1, 0}), Error);
}
