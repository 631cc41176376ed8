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

// Orthogonal multi-level DWT over a two-channel filter bank with periodic
// extension. Analysis output k correlates the taps with samples starting at
// 2k; synthesis is the transpose, so the transform is orthonormal and exactly
// invertible for every supported basis.

#include "wmark/error.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wmark {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar = double>
struct WaveletBasis {
  std::string name;
  VectorX<Scalar> lo_analysis;
  VectorX<Scalar> hi_analysis;
  VectorX<Scalar> lo_synthesis;
  VectorX<Scalar> hi_synthesis;

  Eigen::Index taps() const { return lo_analysis.size(); }
};

namespace detail {

// Extremal-phase Daubechies scaling filters, sum sqrt(2), unit energy.
inline constexpr std::array<double, 2> kDb1 = {0.70710678118654752440, 0.70710678118654752440};
inline constexpr std::array<double, 4> kDb2 = {0.48296291314453414337, 0.83651630373780790557,
                                               0.22414386804201338102, -0.12940952255126038117};
inline constexpr std::array<double, 6> kDb3 = {
    0.33267055295008261599, 0.80689150931109257650,  0.45987750211849157009,
    -0.13501102001025458869, -0.08544127388202666169, 0.03522629188570953660};
inline constexpr std::array<double, 8> kDb4 = {
    0.23037781330889650086,  0.71484657055291564709,  0.63088076792985890788,
    -0.02798376941685985421, -0.18703481171909308408, 0.03084138183556076363,
    0.03288301166688519973,  -0.01059740178506903211};

inline std::span<const double> scaling_filter(std::string_view name) {
  if (name == "haar" || name == "db1") return kDb1;
  if (name == "db2") return kDb2;
  if (name == "db3") return kDb3;
  if (name == "db4") return kDb4;
  throw Error(ErrorKind::UnsupportedBasis, "unsupported wavelet basis '" + std::string(name) + "'");
}

// One analysis stage on an even-length vector.
template <typename Scalar>
void analyze_stage(const VectorX<Scalar>& x, const VectorX<Scalar>& lo, const VectorX<Scalar>& hi,
                   VectorX<Scalar>& approx, VectorX<Scalar>& detail) {
  const Eigen::Index n = x.size();
  const Eigen::Index half = n / 2;
  const Eigen::Index taps = lo.size();
  approx.setZero(half);
  detail.setZero(half);
  for (Eigen::Index k = 0; k < half; ++k) {
    Scalar a = 0;
    Scalar d = 0;
    const Eigen::Index start = 2 * k;
    if (start + taps <= n) {
      for (Eigen::Index j = 0; j < taps; ++j) {
        a += lo[j] * x[start + j];
        d += hi[j] * x[start + j];
      }
    } else {
      for (Eigen::Index j = 0; j < taps; ++j) {
        const Scalar v = x[(start + j) % n];
        a += lo[j] * v;
        d += hi[j] * v;
      }
    }
    approx[k] = a;
    detail[k] = d;
  }
}

// Transpose of analyze_stage: scatter each coefficient back through the taps.
template <typename Scalar>
VectorX<Scalar> synthesize_stage(const VectorX<Scalar>& approx, const VectorX<Scalar>& detail,
                                 const VectorX<Scalar>& lo, const VectorX<Scalar>& hi) {
  const Eigen::Index half = approx.size();
  const Eigen::Index n = 2 * half;
  const Eigen::Index taps = lo.size();
  VectorX<Scalar> x = VectorX<Scalar>::Zero(n);
  for (Eigen::Index k = 0; k < half; ++k) {
    const Eigen::Index start = 2 * k;
    const Scalar a = approx[k];
    const Scalar d = detail[k];
    if (start + taps <= n) {
      for (Eigen::Index j = 0; j < taps; ++j) x[start + j] += lo[j] * a + hi[j] * d;
    } else {
      for (Eigen::Index j = 0; j < taps; ++j) x[(start + j) % n] += lo[j] * a + hi[j] * d;
    }
  }
  return x;
}

}  // namespace detail

/// Builds haar or db1..db4. The high-pass taps are the alternating-sign
/// reversal of the low-pass taps; haar and db1 are the same filter pair.
template <typename Scalar = double>
WaveletBasis<Scalar> make_basis(std::string_view name) {
  const auto h = detail::scaling_filter(name);
  const auto taps = static_cast<Eigen::Index>(h.size());
  WaveletBasis<Scalar> basis;
  basis.name = std::string(name);
  basis.lo_analysis.resize(taps);
  basis.hi_analysis.resize(taps);
  for (Eigen::Index j = 0; j < taps; ++j) {
    basis.lo_analysis[j] = static_cast<Scalar>(h[std::size_t(j)]);
    const double mirrored = h[std::size_t(taps - 1 - j)];
    basis.hi_analysis[j] = static_cast<Scalar>((j % 2 == 0) ? mirrored : -mirrored);
  }
  basis.lo_synthesis = basis.lo_analysis;
  basis.hi_synthesis = basis.hi_analysis;

  // The tables are checked rather than trusted.
  double energy = 0.0, dc = 0.0;
  for (double v : h) {
    energy += v * v;
    dc += v;
  }
  if (std::abs(energy - 1.0) > 1e-12 || std::abs(dc - std::sqrt(2.0)) > 1e-12)
    throw Error(ErrorKind::UnsupportedBasis, "filter table for " + basis.name + " is not orthonormal");
  return basis;
}

inline const std::array<std::string_view, 5>& supported_bases() {
  static const std::array<std::string_view, 5> names = {"haar", "db1", "db2", "db3", "db4"};
  return names;
}

template <typename Scalar = double>
struct Decomposition {
  WaveletBasis<Scalar> basis;
  std::vector<VectorX<Scalar>> details;  // d_1 (finest) .. d_L
  VectorX<Scalar> approx;                // a_L
  std::vector<bool> padded;              // stage k's input had odd length and got one trailing zero
  Eigen::Index original_length = 0;

  int levels() const { return static_cast<int>(details.size()); }
  const VectorX<Scalar>& detail(int level) const { return details.at(std::size_t(level - 1)); }
  VectorX<Scalar>& detail(int level) { return details.at(std::size_t(level - 1)); }
};

template <typename Derived>
Decomposition<typename Derived::Scalar> dwt(const Eigen::MatrixBase<Derived>& signal,
                                            const WaveletBasis<typename Derived::Scalar>& basis,
                                            int levels) {
  using Scalar = typename Derived::Scalar;
  if (levels < 1) throw Error(ErrorKind::Depth, "DWT depth must be at least 1");
  if (levels > 30 || signal.size() < (Eigen::Index(1) << levels))
    throw Error(ErrorKind::Depth, "signal of " + std::to_string(signal.size()) +
                                      " samples is too short for " + std::to_string(levels) +
                                      " levels");

  Decomposition<Scalar> out;
  out.basis = basis;
  out.original_length = signal.size();
  out.details.reserve(std::size_t(levels));

  VectorX<Scalar> running = signal;
  for (int level = 1; level <= levels; ++level) {
    const bool odd = running.size() % 2 != 0;
    if (odd) {
      running.conservativeResize(running.size() + 1);
      running[running.size() - 1] = Scalar(0);
    }
    out.padded.push_back(odd);
    VectorX<Scalar> approx;
    VectorX<Scalar> detail;
    detail::analyze_stage(running, basis.lo_analysis, basis.hi_analysis, approx, detail);
    out.details.push_back(std::move(detail));
    running = std::move(approx);
  }
  out.approx = std::move(running);
  return out;
}

template <typename Scalar>
VectorX<Scalar> idwt(const Decomposition<Scalar>& decomp) {
  const auto levels = decomp.details.size();
  if (levels == 0 || decomp.padded.size() != levels)
    throw Error(ErrorKind::Inconsistent, "decomposition has no levels or a mismatched pad record");

  VectorX<Scalar> running = decomp.approx;
  for (std::size_t k = levels; k-- > 0;) {
    const auto& detail = decomp.details[k];
    if (detail.size() != running.size())
      throw Error(ErrorKind::Inconsistent, "level " + std::to_string(k + 1) + " detail has " +
                                               std::to_string(detail.size()) +
                                               " coefficients, approximation has " +
                                               std::to_string(running.size()));
    running = detail::synthesize_stage(running, detail, decomp.basis.lo_synthesis,
                                       decomp.basis.hi_synthesis);
    if (decomp.padded[k]) running.conservativeResize(running.size() - 1);
  }
  if (running.size() != decomp.original_length)
    throw Error(ErrorKind::Inconsistent, "reconstructed " + std::to_string(running.size()) +
                                             " samples, expected " +
                                             std::to_string(decomp.original_length));
  return running;
}

/// Writes rows (level, band, index, value) with a header; band is 'a' or 'd'.
template <typename Scalar>
void write_subband_csv(const Decomposition<Scalar>& decomp, std::ostream& out) {
  out << "level,band,index,value\n";
  const auto precision = out.precision(17);
  for (int level = 1; level <= decomp.levels(); ++level) {
    const auto& d = decomp.detail(level);
    for (Eigen::Index i = 0; i < d.size(); ++i) out << level << ",d," << i << ',' << d[i] << '\n';
  }
  for (Eigen::Index i = 0; i < decomp.approx.size(); ++i)
    out << decomp.levels() << ",a," << i << ',' << decomp.approx[i] << '\n';
  out.precision(precision);
}

}  // namespace wmark
