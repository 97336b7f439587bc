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

#ifndef HYBRIDPREC_BASELINES_HPP
#define HYBRIDPREC_BASELINES_HPP

#include <vector>

#include "hybridprec/channel.hpp"
#include "hybridprec/fully_connected.hpp"
#include "hybridprec/partially_connected.hpp"
#include "hybridprec/reference.hpp"

namespace hybridprec {

/// Array response vectors of one end of a channel realization, one per ray.
struct CandidateSet {
  ComplexMatrix columns; // N x (N_cl N_ray), unit-norm columns
};

inline CandidateSet transmit_candidates(const ChannelRealization& ch, const ArrayGeometry& geom_t) {
  const Eigen::Index rays = ch.aod_azimuth.size();
  CandidateSet c{ComplexMatrix(geom_t.n_antennas, rays)};
  for (Eigen::Index r = 0; r < rays; ++r)
    c.columns.col(r) = array_response(geom_t, ch.aod_azimuth(r), ch.aod_elevation(r));
  return c;
}

inline CandidateSet receive_candidates(const ChannelRealization& ch, const ArrayGeometry& geom_r) {
  const Eigen::Index rays = ch.aoa_azimuth.size();
  CandidateSet c{ComplexMatrix(geom_r.n_antennas, rays)};
  for (Eigen::Index r = 0; r < rays; ++r)
    c.columns.col(r) = array_response(geom_r, ch.aoa_azimuth(r), ch.aoa_elevation(r));
  return c;
}

struct OmpResult {
  DesignResult design;           // objective_trace holds the residual norm after each pick
  std::vector<Eigen::Index> picks; // candidate column indices, in selection order
};

/// Orthogonal matching pursuit over the array-response dictionary.
///
/// Each round picks the candidate with the largest correlation energy
/// sum_k ||a^H F_res[k]||^2 (lowest index on ties), refits all digital
/// matrices by least squares and renormalizes the residual. Selected columns
/// are scaled by sqrt(N) so that analog entries are unit modulus.
inline OmpResult omp_hybrid(const std::vector<ComplexMatrix>& F_opts, const CandidateSet& cands, int n_rf,
                            Side side = Side::Transmitter) {
  if (F_opts.empty())
    throw InvalidInput("omp_hybrid: at least one target precoder required");
  const Eigen::Index n = F_opts.front().rows();
  if (cands.columns.rows() != n)
    throw InvalidInput("omp_hybrid: candidate length differs from antenna count");
  if (cands.columns.cols() < n_rf || n_rf < 1)
    throw InvalidInput("omp_hybrid: fewer candidates than RF chains");
  const std::size_t K = F_opts.size();

  OmpResult out;
  ComplexMatrix F_RF(n, 0);
  std::vector<ComplexMatrix> F_BB(K);
  std::vector<ComplexMatrix> F_res = F_opts;

  double initial = 0.0;
  for (const auto& F : F_opts)
    initial += F.squaredNorm();
  out.design.objective_trace.push_back(std::sqrt(initial));

  const double scale = std::sqrt(static_cast<double>(n));
  for (int round = 0; round < n_rf; ++round) {
    RealVector energy = RealVector::Zero(cands.columns.cols());
    for (std::size_t k = 0; k < K; ++k)
      energy += (cands.columns.adjoint() * F_res[k]).rowwise().squaredNorm();
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < energy.size(); ++c)
      if (energy(c) > energy(best))
        best = c;
    out.picks.push_back(best);

    F_RF.conservativeResize(Eigen::NoChange, F_RF.cols() + 1);
    F_RF.col(F_RF.cols() - 1) = scale * cands.columns.col(best);

    const ComplexMatrix F_RF_pinv = pinv(F_RF);
    double res_sq = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      F_BB[k] = F_RF_pinv * F_opts[k];
      F_res[k] = F_opts[k] - F_RF * F_BB[k];
      res_sq += F_res[k].squaredNorm();
    }
    out.design.objective_trace.push_back(std::sqrt(res_sq));
    if (res_sq > 0.0)
      for (auto& R : F_res)
        R /= std::sqrt(res_sq);
    out.design.outer_iterations = round + 1;
  }

  out.design.precoder = {std::move(F_RF), std::move(F_BB)};
  if (side == Side::Transmitter)
    out.design.precoder =
        normalize_digital(std::move(out.design.precoder), static_cast<int>(F_opts.front().cols()));
  return out;
}

/// Analog-only beamforming stand-in: F_RF = exp(j arg(F_opt)) entry-wise
/// (phase 0 for zero entries) and F_BB a scaled identity meeting the transmit
/// power constraint; the receive side uses F_BB = I. For the
/// partially-connected structure antenna i keeps only the phase of
/// F_opt(i, l(i)), l(i) being the RF chain that drives it.
inline HybridPrecoder analog_beamforming(const ComplexMatrix& F_opt, int n_s, Side side = Side::Transmitter,
                                         Structure structure = Structure::Fully) {
  if (F_opt.cols() != n_s || n_s < 1 || F_opt.rows() < n_s)
    throw InvalidInput("analog_beamforming: N_RF must equal N_s and not exceed the antenna count");
  HybridPrecoder p;
  switch (structure) {
  case Structure::Fully:
    p.analog = phase_only(F_opt);
    break;
  case Structure::Partially: {
    const int n = static_cast<int>(F_opt.rows());
    BlockAnalogPrecoder mask(RealVector::Zero(n), n_s);
    RealVector phases(n);
    for (int i = 0; i < n; ++i) {
      const Complex v = F_opt(i, mask.subarray_of(i));
      phases(i) = v == Complex(0.0, 0.0) ? 0.0 : std::arg(v);
    }
    p.analog = BlockAnalogPrecoder(std::move(phases), n_s).materialize();
    break;
  }
  case Structure::Digital:
    throw InvalidInput("analog_beamforming: structure must be fully or partially connected");
  }
  ComplexMatrix D = ComplexMatrix::Identity(n_s, n_s);
  if (side == Side::Transmitter)
    D *= std::sqrt(static_cast<double>(n_s)) / p.analog.norm();
  p.digital.push_back(std::move(D));
  return p;
}

} // namespace hybridprec

#endif
