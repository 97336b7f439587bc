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

#ifndef HYBRIDPREC_PARTIALLY_CONNECTED_HPP
#define HYBRIDPREC_PARTIALLY_CONNECTED_HPP

#include <vector>

#include "hybridprec/fully_connected.hpp"
#include "hybridprec/random.hpp"
#include "hybridprec/sdp.hpp"

namespace hybridprec {

/// Array-of-subarrays analog precoder: antenna i (0-based) is driven only by
/// RF chain l(i) = ceil((i + 1) N_RF / N_t) - 1 through phase exp(j theta_i).
/// When N_RF divides N_t the subarrays are equal, otherwise their sizes
/// differ by at most one.
class BlockAnalogPrecoder {
public:
  BlockAnalogPrecoder(RealVector phases, int n_rf) : phases_(std::move(phases)), n_rf_(n_rf) {
    if (n_rf_ < 1 || n_rf_ > phases_.size())
      throw InvalidInput("BlockAnalogPrecoder: need 1 <= N_RF <= N_t");
  }

  static BlockAnalogPrecoder random(int n_t, int n_rf, Rng& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
    RealVector phases(n_t);
    for (int i = 0; i < n_t; ++i)
      phases(i) = u(rng);
    return {std::move(phases), n_rf};
  }

  int n_t() const { return static_cast<int>(phases_.size()); }
  int n_rf() const { return n_rf_; }
  const RealVector& phases() const { return phases_; }

  int subarray_of(int i) const {
    const long long num = static_cast<long long>(i + 1) * n_rf_;
    return static_cast<int>((num + n_t() - 1) / n_t()) - 1;
  }

  std::vector<int> subarray_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(n_rf_), 0);
    for (int i = 0; i < n_t(); ++i)
      ++sizes[static_cast<std::size_t>(subarray_of(i))];
    return sizes;
  }

  ComplexMatrix materialize() const {
    ComplexMatrix F = ComplexMatrix::Zero(n_t(), n_rf_);
    for (int i = 0; i < n_t(); ++i)
      F(i, subarray_of(i)) = std::polar(1.0, phases_(i));
    return F;
  }

  /// F_RF^H A without forming F_RF.
  ComplexMatrix adjoint_times(const ComplexMatrix& A) const {
    ComplexMatrix out = ComplexMatrix::Zero(n_rf_, A.cols());
    for (int i = 0; i < n_t(); ++i)
      out.row(subarray_of(i)) += std::polar(1.0, -phases_(i)) * A.row(i);
    return out;
  }

private:
  RealVector phases_;
  int n_rf_;
};

/// Closed-form analog update: theta_i = arg(sum_k F_opt[k](i,:) F_BB[k](l(i),:)^H).
/// Rows whose inner product vanishes keep the phase from `previous`.
inline BlockAnalogPrecoder analog_phase_update(const std::vector<ComplexMatrix>& F_opts,
                                               const std::vector<ComplexMatrix>& F_BBs,
                                               const BlockAnalogPrecoder& previous) {
  if (F_opts.empty() || F_opts.size() != F_BBs.size())
    throw InvalidInput("analog_phase_update: need matching nonempty target and digital lists");
  const int n_t = previous.n_t();
  for (std::size_t k = 0; k < F_opts.size(); ++k)
    if (F_opts[k].rows() != n_t || F_BBs[k].rows() != previous.n_rf() || F_BBs[k].cols() != F_opts[k].cols())
      throw InvalidInput("analog_phase_update: inconsistent dimensions");

  RealVector phases = previous.phases();
  for (int i = 0; i < n_t; ++i) {
    const int l = previous.subarray_of(i);
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < F_opts.size(); ++k)
      acc += F_opts[k].row(i).cwiseProduct(F_BBs[k].row(l).conjugate()).sum();
    if (std::abs(acc) > 0.0)
      phases(i) = std::arg(acc);
  }
  return {std::move(phases), previous.n_rf()};
}

/// Homogenized form of  min ||F_opt - F_RF F_BB||_F^2  s.t.  ||F_RF F_BB||_F^2 = N_s:
///   min y^H C y  s.t.  y^H A1 y = a1_rhs,  |t|^2 = 1,  y = [vec(F_BB); t].
/// A1 is diagonal with weight n_l N_RF / N_t on every coordinate of row l of
/// F_BB, which is the identity for equal subarrays.
struct HomogeneousQcqp {
  ComplexMatrix C;
  RealVector a1_weights; // length n - 1
  double a1_rhs = 0.0;   // N_RF N_s / N_t
  int n_rf = 0;
  int n_s = 0;

  Eigen::Index dimension() const { return C.rows(); }

  SdpProblem to_sdp() const {
    const Eigen::Index n = dimension();
    SdpProblem p;
    p.C = C;
    ComplexMatrix A1 = ComplexMatrix::Zero(n, n);
    A1.diagonal().head(n - 1) = a1_weights.cast<Complex>();
    ComplexMatrix A2 = ComplexMatrix::Zero(n, n);
    A2(n - 1, n - 1) = 1.0;
    p.constraints.push_back({std::move(A1), a1_rhs});
    p.constraints.push_back({std::move(A2), 1.0});
    return p;
  }
};

/// Builds C = [[E^H E, -E^H f], [-f^H E, f^H f]] with E = I_{N_s} (x) F_RF and
/// f = vec(F_opt). E^H E is diagonal because the subarrays are disjoint.
inline HomogeneousQcqp homogenize_qcqp(const ComplexMatrix& F_opt, const BlockAnalogPrecoder& F_RF) {
  if (F_opt.rows() != F_RF.n_t())
    throw InvalidInput("homogenize_qcqp: F_opt row count differs from N_t");
  const int n_rf = F_RF.n_rf();
  const int n_s = static_cast<int>(F_opt.cols());
  const int nb = n_rf * n_s;
  const std::vector<int> sizes = F_RF.subarray_sizes();

  HomogeneousQcqp q;
  q.n_rf = n_rf;
  q.n_s = n_s;
  q.C = ComplexMatrix::Zero(nb + 1, nb + 1);
  q.a1_weights.resize(nb);
  for (int s = 0; s < n_s; ++s)
    for (int l = 0; l < n_rf; ++l) {
      const int idx = s * n_rf + l;
      const double size = sizes[static_cast<std::size_t>(l)];
      q.C(idx, idx) = size;
      q.a1_weights(idx) = size * n_rf / F_RF.n_t();
    }
  const ComplexVector Ehf = vec(F_RF.adjoint_times(F_opt));
  q.C.col(nb).head(nb) = -Ehf;
  q.C.row(nb).head(nb) = -Ehf.adjoint();
  q.C(nb, nb) = F_opt.squaredNorm();
  q.a1_rhs = static_cast<double>(n_rf) * n_s / F_RF.n_t();
  return q;
}

struct SdrDigitalResult {
  ComplexMatrix F_BB;
  double eig_ratio = 0.0;
  SdpSolution sdp;
  bool tight() const { return eig_ratio >= 1e6; }
};

/// Globally optimal power-constrained digital precoder for a fixed block
/// analog precoder, via the semidefinite relaxation of the homogenized QCQP.
/// The dominant eigenvector of the SDP solution is phase-aligned so that t is
/// real positive, de-homogenized, and rescaled onto the power constraint.
inline SdrDigitalResult sdr_digital_update(const ComplexMatrix& F_opt, const BlockAnalogPrecoder& F_RF,
                                           const SdpOptions& sdp_options = {}) {
  const HomogeneousQcqp q = homogenize_qcqp(F_opt, F_RF);
  SdrDigitalResult out;
  out.sdp = solve_sdp(q.to_sdp(), sdp_options);
  const RankOne r1 = extract_rank_one(out.sdp.Y);
  out.eig_ratio = r1.eig_ratio;

  const Eigen::Index nb = q.dimension() - 1;
  const Complex t = r1.y(nb);
  if (!(std::abs(t) > 1e-12))
    throw SolverError("sdr_digital_update: homogenizing coordinate vanished", out.sdp.gap(), out.sdp.iterations);
  ComplexVector b = r1.y.head(nb) * (std::conj(t) / (std::abs(t) * std::abs(t)));

  const double weighted = (q.a1_weights.array() * b.array().abs2()).sum();
  if (weighted > 0.0)
    b *= std::sqrt(q.a1_rhs / weighted);
  out.F_BB = unvec(b, q.n_rf, q.n_s);
  return out;
}

/// Alternating minimization for the partially-connected structure (SDR-AltMin).
///
/// Transmit side: SDR digital update per subcarrier, then the closed-form
/// phase update; the power constraint holds by construction. Receive side:
/// the digital step is the unconstrained least-squares solution.
inline DesignResult sdr_altmin(const std::vector<ComplexMatrix>& F_opts, int n_rf, const AltMinParams& params,
                               Side side = Side::Transmitter, const SdpOptions& sdp_options = {}) {
  detail::check_targets(F_opts, n_rf, "sdr_altmin");
  params.validate();
  const int n = static_cast<int>(F_opts.front().rows());
  const std::size_t K = F_opts.size();

  Rng rng(params.seed);
  DesignResult out;
  out.min_eig_ratio = std::numeric_limits<double>::infinity();
  BlockAnalogPrecoder F_RF = BlockAnalogPrecoder::random(n, n_rf, rng);
  std::vector<ComplexMatrix> F_BB(K);

  auto update_digital = [&] {
    if (side == Side::Transmitter) {
      for (std::size_t k = 0; k < K; ++k) {
        SdrDigitalResult r = sdr_digital_update(F_opts[k], F_RF, sdp_options);
        out.min_eig_ratio = std::min(out.min_eig_ratio, r.eig_ratio);
        F_BB[k] = std::move(r.F_BB);
      }
    } else {
      const ComplexMatrix F_RF_pinv = pinv(F_RF.materialize());
      for (std::size_t k = 0; k < K; ++k)
        F_BB[k] = F_RF_pinv * F_opts[k];
    }
  };

  update_digital();
  out.objective_trace.push_back(detail::objective(F_opts, F_RF.materialize(), F_BB));
  for (int it = 0; it < params.max_outer_iters; ++it) {
    F_RF = analog_phase_update(F_opts, F_BB, F_RF);
    update_digital();
    const double prev = out.objective_trace.back();
    const double cur = detail::objective(F_opts, F_RF.materialize(), F_BB);
    out.objective_trace.push_back(cur);
    out.outer_iterations = it + 1;
    if (detail::converged(prev, cur, params.rel_obj_tol))
      break;
  }
  out.precoder = {F_RF.materialize(), std::move(F_BB)};
  return out;
}

} // namespace hybridprec

#endif
