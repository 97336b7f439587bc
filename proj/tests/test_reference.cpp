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

#include <catch_amalgamated.hpp>

#include <random>

#include "hybridprec/channel.hpp"
#include "hybridprec/reference.hpp"
#include "support/oracles.hpp"

using namespace hybridprec;

namespace {

ComplexMatrix eye(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix sample_h(std::uint64_t seed, int nt = 16, int nr = 4) {
  Rng rng = make_substream(seed, 0, StreamTag::Channel);
  return sample_channel({nt}, {nr}, ClusterConfig{}, rng).h_narrowband;
}

} // namespace

TEST_CASE("optimal precoder of a diagonal channel", "[reference]") {
  ComplexMatrix H = ComplexMatrix::Zero(2, 2);
  H(0, 0) = 2.0;
  H(1, 1) = 1.0;
  const ComplexMatrix F = optimal_precoder(H, 1);
  CHECK(std::abs(std::abs(F(0, 0)) - 1.0) < 1e-14);
  CHECK(std::abs(F(1, 0)) < 1e-14);
  const ComplexMatrix W = optimal_decoder(H, 1);
  CHECK(std::abs(W(0, 0) - Complex(1.0, 0.0)) < 1e-14);
}

TEST_CASE("optimal precoder is orthonormal with power N_s", "[reference]") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ComplexMatrix H = sample_h(s);
    const OptimalPair p = optimal_pair(H, 3);
    CHECK((p.precoder.adjoint() * p.precoder - eye(3)).norm() <= 1e-10);
    CHECK((p.decoder.adjoint() * p.decoder - eye(3)).norm() <= 1e-10);
    CHECK(p.precoder.squaredNorm() == Catch::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("optimal pair rejects rank-deficient channels and too many streams", "[reference]") {
  std::mt19937_64 g(1);
  const ComplexMatrix H = oracle::gaussian(g, 4, 1) * oracle::gaussian(g, 1, 6); // rank one
  CHECK_NOTHROW(optimal_pair(H, 1));
  CHECK_THROWS_AS(optimal_pair(H, 2), DegenerateChannel);
  CHECK_THROWS_AS(optimal_pair(H, 5), InvalidInput);
  CHECK_THROWS_AS(optimal_pair(H, 0), InvalidInput);
}

TEST_CASE("optimal pair beats random orthonormal pairs", "[reference]") {
  std::mt19937_64 g(2);
  const ComplexMatrix H = sample_h(77);
  const LinkBudget link = LinkBudget::from_snr_db(0.0);
  const OptimalPair p = optimal_pair(H, 2);
  const double best = spectral_efficiency(H, p.precoder, eye(2), p.decoder, eye(2), link);
  for (int t = 0; t < 100; ++t) {
    const ComplexMatrix F = oracle::semi_unitary(g, 16, 2);
    const ComplexMatrix W = oracle::semi_unitary(g, 4, 2);
    CHECK(spectral_efficiency(H, F, eye(2), W, eye(2), link) <= best + 1e-12);
  }
}

TEST_CASE("scalar spectral efficiency", "[reference]") {
  const ComplexMatrix one = eye(1);
  CHECK(spectral_efficiency(one, one, one, one, one, {1.0, 1.0}) == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(spectral_efficiency(one, one, ComplexMatrix::Zero(1, 1), one, one, {1.0, 1.0}) == 0.0);
}

TEST_CASE("optimal digital rate matches the singular-value closed form", "[reference]") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ComplexMatrix H = sample_h(100 + s);
    const int ns = 3;
    const LinkBudget link = LinkBudget::from_snr_db(-3.0 + s);
    const OptimalPair p = optimal_pair(H, ns);
    const double rate = spectral_efficiency(H, p.precoder, eye(ns), p.decoder, eye(ns), link);
    Eigen::JacobiSVD<ComplexMatrix> svd(H);
    double ref = 0.0;
    for (int i = 0; i < ns; ++i)
      ref += std::log2(1.0 + link.rho / (link.noise_var * ns) * svd.singularValues()(i) * svd.singularValues()(i));
    CHECK(std::abs(rate - ref) <= 1e-9);
  }
}

TEST_CASE("spectral efficiency agrees with an eigenvalue evaluation", "[reference]") {
  std::mt19937_64 g(3);
  const ComplexMatrix H = sample_h(5);
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix F_RF = oracle::unit_modulus(g, 16, 3), F_BB = oracle::gaussian(g, 3, 2);
    const ComplexMatrix W_RF = oracle::unit_modulus(g, 4, 3), W_BB = oracle::gaussian(g, 3, 2);
    const ComplexMatrix W = W_RF * W_BB;
    // For full-column-rank W, W^+ = (W^H W)^{-1} W^H; whiten with its inverse square root.
    const ComplexMatrix G = W.adjoint() * W;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(G);
    const ComplexMatrix G_isqrt = es.operatorInverseSqrt();
    const ComplexMatrix HF = H * F_RF * F_BB;
    const ComplexMatrix M = G_isqrt * W.adjoint() * HF * HF.adjoint() * W * G_isqrt;
    const double ref = oracle::log2det_eig(M, 2.0 / 2.0);
    CHECK(spectral_efficiency(H, F_RF, F_BB, W_RF, W_BB, {2.0, 1.0}) == Catch::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("spectral efficiency ignores a scalar on the digital combiner", "[reference]") {
  std::mt19937_64 g(4);
  const ComplexMatrix H = sample_h(6);
  const ComplexMatrix F_RF = oracle::unit_modulus(g, 16, 2), F_BB = oracle::gaussian(g, 2, 2);
  const ComplexMatrix W_RF = oracle::unit_modulus(g, 4, 2), W_BB = oracle::gaussian(g, 2, 2);
  const LinkBudget link = LinkBudget::from_snr_db(5.0);
  const double base = spectral_efficiency(H, F_RF, F_BB, W_RF, W_BB, link);
  for (Complex a : {Complex(3.0, -1.0), Complex(1e-3, 0.0), Complex(0.0, -40.0)})
    CHECK(std::abs(spectral_efficiency(H, F_RF, F_BB, W_RF, ComplexMatrix(a * W_BB), link) - base) <= 1e-9);
}

TEST_CASE("spectral efficiency is nondecreasing in SNR", "[reference]") {
  std::mt19937_64 g(5);
  const ComplexMatrix H = sample_h(8);
  const ComplexMatrix F_RF = oracle::unit_modulus(g, 16, 2), F_BB = oracle::gaussian(g, 2, 2);
  const ComplexMatrix W_RF = oracle::unit_modulus(g, 4, 2), W_BB = oracle::gaussian(g, 2, 2);
  double prev = -1.0;
  for (double snr = -30.0; snr <= 30.0; snr += 2.5) {
    const double r = spectral_efficiency(H, F_RF, F_BB, W_RF, W_BB, LinkBudget::from_snr_db(snr));
    CHECK(r >= prev);
    prev = r;
  }
}

TEST_CASE("spectral efficiency errors", "[reference]") {
  const ComplexMatrix H = sample_h(9);
  const OptimalPair p = optimal_pair(H, 2);
  ComplexMatrix W = p.decoder;
  W.col(1) = W.col(0);
  CHECK_THROWS_AS(spectral_efficiency(H, p.precoder, eye(2), W, eye(2), {}), DegenerateCombiner);
  CHECK_THROWS_AS(spectral_efficiency(H, p.precoder, eye(3), p.decoder, eye(2), {}), InvalidInput);
  CHECK_THROWS_AS(spectral_efficiency(H, p.precoder, eye(2), p.decoder, eye(2), {0.0, 1.0}), InvalidInput);
}

TEST_CASE("OFDM spectral efficiency averages subcarriers", "[reference]") {
  std::vector<ComplexMatrix> H{sample_h(10), sample_h(11)};
  const OptimalPair a = optimal_pair(H[0], 2), b = optimal_pair(H[1], 2);
  const LinkBudget link{};
  const ComplexMatrix I16 = eye(16), I4 = eye(4);
  const double avg = spectral_efficiency(H, I16, {a.precoder, b.precoder}, I4, {a.decoder, b.decoder}, link);
  const double r0 = spectral_efficiency(H[0], a.precoder, eye(2), a.decoder, eye(2), link);
  const double r1 = spectral_efficiency(H[1], b.precoder, eye(2), b.decoder, eye(2), link);
  CHECK(avg == Catch::Approx(0.5 * (r0 + r1)).epsilon(1e-12));
  CHECK_THROWS_AS(spectral_efficiency(H, I16, {a.precoder}, I4, {a.decoder, b.decoder}, link), InvalidInput);
}

TEST_CASE("energy efficiency power model", "[reference]") {
  const PowerModel pm{};
  CHECK(energy_efficiency(0.0, Structure::Fully, 4, 144, pm) == 0.0);
  CHECK(energy_efficiency(10.0, Structure::Fully, 4, 144, pm) == Catch::Approx(10.0 / 30.56).epsilon(1e-12));
  CHECK(energy_efficiency(10.0, Structure::Fully, 4, 144, pm) == Catch::Approx(0.3272).margin(5e-5));
  CHECK(energy_efficiency(10.0, Structure::Partially, 4, 144, pm) == Catch::Approx(10.0 / 26.24).epsilon(1e-12));
  CHECK(energy_efficiency(10.0, Structure::Partially, 4, 144, pm) == Catch::Approx(0.3811).margin(5e-5));
  CHECK(phase_shifter_count(Structure::Fully, 4, 144) == 576);
  CHECK(phase_shifter_count(Structure::Partially, 4, 144) == 144);
  CHECK_THROWS_AS(energy_efficiency(-1.0, Structure::Fully, 4, 144, pm), InvalidInput);
  CHECK_THROWS_AS(energy_efficiency(1.0, Structure::Fully, 4, 144, PowerModel{-1.0, 0.1, 0.01, 0.1}), InvalidInput);
}

TEST_CASE("euclidean distance", "[reference]") {
  std::mt19937_64 g(6);
  const ComplexMatrix F_opt = oracle::semi_unitary(g, 16, 3);
  const ComplexMatrix F_RF = oracle::unit_modulus(g, 16, 4), F_BB = oracle::gaussian(g, 4, 3);
  CHECK(euclidean_distance(F_opt, F_opt, eye(3)) == 0.0);
  CHECK(euclidean_distance(F_opt, F_RF, ComplexMatrix::Zero(4, 3)) == Catch::Approx(std::sqrt(3.0)).epsilon(1e-12));
  double acc = 0.0;
  const ComplexMatrix P = F_RF * F_BB;
  for (Eigen::Index i = 0; i < 16; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      acc += std::norm(F_opt(i, j) - P(i, j));
  CHECK(std::abs(euclidean_distance(F_opt, F_RF, F_BB) - std::sqrt(acc)) <= 1e-12);
  CHECK_THROWS_AS(euclidean_distance(F_opt, F_RF, eye(3)), InvalidInput);
}
