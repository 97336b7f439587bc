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

#ifndef HYBRIDPREC_FULLY_CONNECTED_HPP
#define HYBRIDPREC_FULLY_CONNECTED_HPP

#include <cstdint>
#include <vector>

#include "hybridprec/manifold.hpp"
#include "hybridprec/numerics.hpp"
#include "hybridprec/random.hpp"

namespace hybridprec {

/// Analog part shared by all subcarriers plus one digital matrix per subcarrier.
struct HybridPrecoder {
  ComplexMatrix analog;               // N x N_RF
  std::vector<ComplexMatrix> digital; // N_RF x N_s each; one entry when narrowband

  ComplexMatrix product(std::size_t k = 0) const { return analog * digital.at(k); }
};

/// The transmitter enforces ||F_RF F_BB[k]||_F^2 = N_s; the receiver has no
/// power constraint.
enum class Side { Transmitter, Receiver };

struct AltMinParams {
  int max_outer_iters = 100;
  double rel_obj_tol = 1e-4;
  std::uint64_t seed = 0;

  void validate() const {
    if (max_outer_iters < 1)
      throw InvalidInput("AltMinParams: max_outer_iters must be at least 1");
    if (!(rel_obj_tol > 0.0))
      throw InvalidInput("AltMinParams: rel_obj_tol must be positive");
  }
};

struct CgSummary {
  int iterations = 0;
  bool converged = false;
  bool stalled = false;
  double grad_norm = 0.0;
};

struct DesignResult {
  HybridPrecoder precoder;
  std::vector<double> objective_trace; // [0] is the value at the random start
  int outer_iterations = 0;
  std::vector<CgSummary> cg_runs;      // MO-AltMin only
  double min_eig_ratio = 0.0;          // SDR-AltMin only
};

namespace detail {

inline void check_targets(const std::vector<ComplexMatrix>& F_opts, int n_rf, const char* who) {
  if (F_opts.empty())
    throw InvalidInput(std::string(who) + ": at least one target precoder required");
  const Eigen::Index rows = F_opts.front().rows();
  const Eigen::Index n_s = F_opts.front().cols();
  for (const auto& F : F_opts)
    if (F.rows() != rows || F.cols() != n_s)
      throw InvalidInput(std::string(who) + ": per-subcarrier targets differ in shape");
  if (n_rf < n_s || n_rf > rows)
    throw InvalidInput(std::string(who) + ": need N_s <= N_RF <= N antennas");
}

inline double objective(const std::vector<ComplexMatrix>& F_opts, const ComplexMatrix& F_RF,
                        const std::vector<ComplexMatrix>& F_BBs) {
  double sum = 0.0;
  for (std::size_t k = 0; k < F_opts.size(); ++k)
    sum += (F_opts[k] - F_RF * F_BBs[k]).squaredNorm();
  return sum;
}

inline bool converged(double prev, double cur, double rel_tol) {
  return prev - cur <= rel_tol * prev;
}

} // namespace detail

/// Least-squares digital precoder pinv(F_RF) F_opt.
inline ComplexMatrix ls_digital(const ComplexMatrix& F_RF, const ComplexMatrix& F_opt) {
  if (F_RF.rows() != F_opt.rows())
    throw InvalidInput("ls_digital: F_RF and F_opt row counts differ");
  return pinv(F_RF) * F_opt;
}

/// Scales each digital[k] so that ||analog digital[k]||_F^2 = N_s.
inline HybridPrecoder normalize_digital(HybridPrecoder pre, int n_s) {
  for (auto& D : pre.digital) {
    const double norm = (pre.analog * D).norm();
    if (!(norm > 0.0))
      throw DegeneratePrecoder("normalize_digital: hybrid product is zero");
    D *= std::sqrt(static_cast<double>(n_s)) / norm;
  }
  return pre;
}

/// Manifold-optimization alternating minimization (MO-AltMin).
///
/// Alternates least-squares digital updates (independent per subcarrier) with
/// Riemannian CG on the shared analog precoder, minimizing
/// sum_k ||F_opt[k] - F_RF F_BB[k]||_F^2 until the relative decrease per outer
/// iteration drops below rel_obj_tol. On the transmit side the digital
/// matrices are finally scaled to meet the power constraint.
inline DesignResult mo_altmin(const std::vector<ComplexMatrix>& F_opts, int n_rf, const AltMinParams& params,
                              const CgParams& cg_params = {}, Side side = Side::Transmitter) {
  detail::check_targets(F_opts, n_rf, "mo_altmin");
  params.validate();
  const Eigen::Index n = F_opts.front().rows();
  const std::size_t K = F_opts.size();

  Rng rng(params.seed);
  DesignResult out;
  ComplexMatrix F_RF = random_phase_matrix(rng, n, n_rf);
  std::vector<ComplexMatrix> F_BB(K);

  auto update_digital = [&] {
    const ComplexMatrix F_RF_pinv = pinv(F_RF);
    for (std::size_t k = 0; k < K; ++k)
      F_BB[k] = F_RF_pinv * F_opts[k];
  };

  update_digital();
  out.objective_trace.push_back(detail::objective(F_opts, F_RF, F_BB));

  std::vector<AnalogTarget> targets(K);
  for (int it = 0; it < params.max_outer_iters; ++it) {
    for (std::size_t k = 0; k < K; ++k)
      targets[k] = {F_opts[k], F_BB[k]};
    const CgResult cg = riemannian_cg(CirclePoint::from_matrix(F_RF), AnalogObjective(targets), cg_params);
    out.cg_runs.push_back({cg.iterations, cg.converged, cg.stalled, cg.grad_norm});
    F_RF = cg.x.as_matrix(n, n_rf);

    update_digital();
    const double prev = out.objective_trace.back();
    const double cur = detail::objective(F_opts, F_RF, F_BB);
    out.objective_trace.push_back(cur);
    out.outer_iterations = it + 1;
    if (detail::converged(prev, cur, params.rel_obj_tol))
      break;
  }

  out.precoder = {std::move(F_RF), std::move(F_BB)};
  if (side == Side::Transmitter)
    out.precoder = normalize_digital(std::move(out.precoder), static_cast<int>(F_opts.front().cols()));
  return out;
}

/// Semi-unitary digital factor maximizing Re Tr(F_DD F_opt^H F_RF): with
/// F_opt^H F_RF = U S V1^H, F_DD = V1 U^H.
inline ComplexMatrix pe_digital_update(const ComplexMatrix& F_opt, const ComplexMatrix& F_RF) {
  if (F_opt.rows() != F_RF.rows())
    throw InvalidInput("pe_digital_update: F_opt and F_RF row counts differ");
  if (F_RF.cols() < F_opt.cols())
    throw InvalidInput("pe_digital_update: need N_RF >= N_s");
  const ThinSvd svd = svd_thin(F_opt.adjoint() * F_RF);
  return svd.V * svd.U.adjoint();
}

/// Surrogate sum_k ||F_opt[k] F_DD[k]^H - F_RF||_F^2 minimized by PE-AltMin.
inline double pe_surrogate(const std::vector<ComplexMatrix>& F_opts, const ComplexMatrix& F_RF,
                           const std::vector<ComplexMatrix>& F_DDs) {
  double sum = 0.0;
  for (std::size_t k = 0; k < F_opts.size(); ++k)
    sum += (F_opts[k] * F_DDs[k].adjoint() - F_RF).squaredNorm();
  return sum;
}

/// Phase-extraction analog update: arg(F_RF) = arg(sum_k F_opt[k] F_DD[k]^H).
/// Entries whose target vanishes keep their previous phase.
inline ComplexMatrix pe_analog_update(const std::vector<ComplexMatrix>& F_opts,
                                      const std::vector<ComplexMatrix>& F_DDs, const ComplexMatrix& previous) {
  ComplexMatrix acc = ComplexMatrix::Zero(previous.rows(), previous.cols());
  for (std::size_t k = 0; k < F_opts.size(); ++k)
    acc.noalias() += F_opts[k] * F_DDs[k].adjoint();
  return phase_only(acc, &previous);
}

/// Phase-extraction alternating minimization (PE-AltMin). The trace records
/// the surrogate objective; the transmit-side digital output is F_DD scaled
/// to the power constraint.
inline DesignResult pe_altmin(const std::vector<ComplexMatrix>& F_opts, int n_rf, const AltMinParams& params,
                              Side side = Side::Transmitter) {
  detail::check_targets(F_opts, n_rf, "pe_altmin");
  params.validate();
  const Eigen::Index n = F_opts.front().rows();
  const std::size_t K = F_opts.size();

  Rng rng(params.seed);
  DesignResult out;
  ComplexMatrix F_RF = random_phase_matrix(rng, n, n_rf);
  std::vector<ComplexMatrix> F_DD(K);
  auto update_digital = [&] {
    for (std::size_t k = 0; k < K; ++k)
      F_DD[k] = pe_digital_update(F_opts[k], F_RF);
  };

  update_digital();
  out.objective_trace.push_back(pe_surrogate(F_opts, F_RF, F_DD));
  for (int it = 0; it < params.max_outer_iters; ++it) {
    F_RF = pe_analog_update(F_opts, F_DD, F_RF);
    update_digital();
    const double prev = out.objective_trace.back();
    const double cur = pe_surrogate(F_opts, F_RF, F_DD);
    out.objective_trace.push_back(cur);
    out.outer_iterations = it + 1;
    if (detail::converged(prev, cur, params.rel_obj_tol))
      break;
  }

  out.precoder = {std::move(F_RF), std::move(F_DD)};
  if (side == Side::Transmitter)
    out.precoder = normalize_digital(std::move(out.precoder), static_cast<int>(F_opts.front().cols()));
  return out;
}

enum class FullyConnectedAlgorithm { MoAltMin, PeAltMin };

/// Hybrid combiner for the fully-connected receiver: same alternation as the
/// precoder, without the power normalization.
inline DesignResult design_combiner(const std::vector<ComplexMatrix>& W_opts, int n_rf,
                                    FullyConnectedAlgorithm algorithm, const AltMinParams& params,
                                    const CgParams& cg_params = {}) {
  switch (algorithm) {
  case FullyConnectedAlgorithm::MoAltMin:
    return mo_altmin(W_opts, n_rf, params, cg_params, Side::Receiver);
  case FullyConnectedAlgorithm::PeAltMin:
    return pe_altmin(W_opts, n_rf, params, Side::Receiver);
  }
  throw InvalidInput("design_combiner: unknown algorithm");
}

} // namespace hybridprec

#endif
