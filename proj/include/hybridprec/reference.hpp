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

#ifndef HYBRIDPREC_REFERENCE_HPP
#define HYBRIDPREC_REFERENCE_HPP

#include <cmath>
#include <string>
#include <vector>

#include "hybridprec/numerics.hpp"

namespace hybridprec {

enum class Structure { Fully, Partially, Digital };

inline const char* to_string(Structure s) {
  switch (s) {
  case Structure::Fully:
    return "fully";
  case Structure::Partially:
    return "partially";
  case Structure::Digital:
    return "digital";
  }
  return "?";
}

/// Transmitter power consumption constants, in watts.
struct PowerModel {
  double p_common = 10.0;
  double p_rf = 0.1;
  double p_ps = 0.01;
  double p_pa = 0.1;

  void validate() const {
    if (p_common < 0.0 || p_rf < 0.0 || p_ps < 0.0 || p_pa < 0.0)
      throw InvalidInput("PowerModel: powers must be nonnegative");
  }
};

struct LinkBudget {
  double rho = 1.0;       // average received power
  double noise_var = 1.0; // sigma_n^2

  void validate() const {
    if (!(rho > 0.0) || !(noise_var > 0.0))
      throw InvalidInput("LinkBudget: rho and noise variance must be positive");
  }

  static LinkBudget from_snr_db(double snr_db) { return {std::pow(10.0, snr_db / 10.0), 1.0}; }
};

struct OptimalPair {
  ComplexMatrix precoder; // N_t x N_s, leading right singular vectors
  ComplexMatrix decoder;  // N_r x N_s, leading left singular vectors
  RealVector singular_values;
};

/// Unconstrained fully digital precoder/decoder from the channel SVD.
inline OptimalPair optimal_pair(const ComplexMatrix& H, int n_s) {
  if (n_s < 1 || n_s > std::min(H.rows(), H.cols()))
    throw InvalidInput("optimal_pair: stream count " + std::to_string(n_s) + " exceeds channel rank bound");
  const ThinSvd svd = svd_thin(H);
  if (!(svd.s(n_s - 1) > kPinvRelTol * svd.s(0)))
    throw DegenerateChannel("optimal_pair: channel has fewer than " + std::to_string(n_s) +
                            " nonzero singular values");
  return {svd.V.leftCols(n_s), svd.U.leftCols(n_s), svd.s};
}

inline ComplexMatrix optimal_precoder(const ComplexMatrix& H, int n_s) { return optimal_pair(H, n_s).precoder; }
inline ComplexMatrix optimal_decoder(const ComplexMatrix& H, int n_s) { return optimal_pair(H, n_s).decoder; }

/// Achievable rate in bits/s/Hz with Gaussian signalling:
///   log2 det(I + rho/(sigma^2 N_s) (W_RF W_BB)^+ H F_RF F_BB F_BB^H F_RF^H H^H (W_RF W_BB)).
inline double spectral_efficiency(const ComplexMatrix& H, const ComplexMatrix& F_RF, const ComplexMatrix& F_BB,
                                  const ComplexMatrix& W_RF, const ComplexMatrix& W_BB, const LinkBudget& link) {
  link.validate();
  if (F_RF.rows() != H.cols() || F_RF.cols() != F_BB.rows() || W_RF.rows() != H.rows() ||
      W_RF.cols() != W_BB.rows() || W_BB.cols() != F_BB.cols())
    throw InvalidInput("spectral_efficiency: inconsistent dimensions");

  const ComplexMatrix W = W_RF * W_BB;
  const ThinSvd wsvd = svd_thin(W);
  if (!(wsvd.s(wsvd.s.size() - 1) > kPinvRelTol * wsvd.s(0)))
    throw DegenerateCombiner("spectral_efficiency: combiner W_RF W_BB is rank deficient");

  const Eigen::Index n_s = F_BB.cols();
  const ComplexMatrix HF = H * F_RF * F_BB;
  const ComplexMatrix M = pinv(W) * HF * HF.adjoint() * W;
  const double c = link.rho / (link.noise_var * static_cast<double>(n_s));
  const ComplexMatrix A = ComplexMatrix::Identity(n_s, n_s) + c * M;

  Eigen::PartialPivLU<ComplexMatrix> lu(A);
  const ComplexMatrix& LU = lu.matrixLU();
  double log2det = 0.0;
  for (Eigen::Index i = 0; i < n_s; ++i)
    log2det += std::log2(std::abs(LU(i, i)));
  return log2det;
}

/// Per-subcarrier rates averaged over k; F_RF and W_RF are shared.
inline double spectral_efficiency(const std::vector<ComplexMatrix>& H, const ComplexMatrix& F_RF,
                                  const std::vector<ComplexMatrix>& F_BB, const ComplexMatrix& W_RF,
                                  const std::vector<ComplexMatrix>& W_BB, const LinkBudget& link) {
  if (H.empty() || H.size() != F_BB.size() || H.size() != W_BB.size())
    throw InvalidInput("spectral_efficiency: per-subcarrier lists must be nonempty and equally long");
  double sum = 0.0;
  for (std::size_t k = 0; k < H.size(); ++k)
    sum += spectral_efficiency(H[k], F_RF, F_BB[k], W_RF, W_BB[k], link);
  return sum / static_cast<double>(H.size());
}

inline int phase_shifter_count(Structure s, int n_rf, int n_t) {
  switch (s) {
  case Structure::Fully:
    return n_t * n_rf;
  case Structure::Partially:
    return n_t;
  case Structure::Digital:
    return 0;
  }
  return 0;
}

/// Bits/Hz/J: rate over P_common + N_RF P_RF + N_t P_PA + N_PS P_PS.
inline double energy_efficiency(double rate, Structure structure, int n_rf, int n_t, const PowerModel& pm) {
  if (rate < 0.0)
    throw InvalidInput("energy_efficiency: negative rate");
  pm.validate();
  const double power = pm.p_common + n_rf * pm.p_rf + n_t * pm.p_pa +
                       phase_shifter_count(structure, n_rf, n_t) * pm.p_ps;
  return rate / power;
}

inline double euclidean_distance(const ComplexMatrix& F_opt, const ComplexMatrix& F_RF, const ComplexMatrix& F_BB) {
  if (F_RF.rows() != F_opt.rows() || F_RF.cols() != F_BB.rows() || F_BB.cols() != F_opt.cols())
    throw InvalidInput("euclidean_distance: inconsistent dimensions");
  return (F_opt - F_RF * F_BB).norm();
}

} // namespace hybridprec

#endif
