// SPDX-License-Identifier: Apache-2.0
//
// hybridprec: alternating-minimization hybrid precoding for mmWave MIMO
// Copyright (C) 2026 The hybridprec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HYBRIDPREC_RANDOM_HPP
#define HYBRIDPREC_RANDOM_HPP

#include <cstdint>
#include <random>

#include "hybridprec/numerics.hpp"

namespace hybridprec {

using Rng = std::mt19937_64;

// Independent streams for the different consumers of one realization.
enum class StreamTag : std::uint32_t {
  Channel = 1,
  Precoder = 2,
  Combiner = 3,
};

/// Deterministic substream for (master seed, realization index, consumer).
inline Rng make_substream(std::uint64_t seed, std::uint64_t index, StreamTag tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(tag)};
  return Rng(seq);
}

// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline Complex complex_gaussian(Rng& rng, double variance = 1.0) {
  std::normal_distribution<double> n(0.0, std::sqrt(variance / 2.0));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

inline ComplexMatrix random_gaussian_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  ComplexMatrix A(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      A(i, j) = complex_gaussian(rng);
  return A;
}

// Entries exp(j theta) with theta uniform on [0, 2 pi).
inline ComplexMatrix random_phase_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  ComplexMatrix A(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      A(i, j) = std::polar(1.0, u(rng));
  return A;
}

// Zero-mean Laplacian with scale b (standard deviation b * sqrt(2)).
inline double laplacian(Rng& rng, double scale) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  double v = u(rng);
  while (v == -0.5)
    v = u(rng);
  return v < 0.0 ? scale * std::log1p(2.0 * v) : -scale * std::log1p(-2.0 * v);
}

} // namespace hybridprec

#endif
