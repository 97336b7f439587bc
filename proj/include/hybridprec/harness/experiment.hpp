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

#ifndef HYBRIDPREC_HARNESS_EXPERIMENT_HPP
#define HYBRIDPREC_HARNESS_EXPERIMENT_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <vector>

#include "hybridprec/baselines.hpp"
#include "hybridprec/channel.hpp"
#include "hybridprec/fully_connected.hpp"
#include "hybridprec/harness/config.hpp"
#include "hybridprec/partially_connected.hpp"
#include "hybridprec/random.hpp"
#include "hybridprec/reference.hpp"

namespace hybridprec::harness {

struct ResultRow {
  std::string algorithm;
  std::string structure;
  double snr_db = 0.0;
  int n_rf = 0;
  int subcarriers = 1;
  double mean_rate = 0.0;
  double std_rate = 0.0;
  double mean_energy_eff = 0.0;
  int realizations = 0;
  double wall_time_s = 0.0;

  bool operator==(const ResultRow&) const = default;
};

/// Precoder and combiner of one link, shared analog parts and one digital
/// matrix per subcarrier.
struct LinkDesign {
  ComplexMatrix F_RF;
  std::vector<ComplexMatrix> F_BB;
  ComplexMatrix W_RF;
  std::vector<ComplexMatrix> W_BB;
};

/// Rates of every realization: rates[a][s][r] for algorithm a, SNR s.
struct ExperimentTrace {
  std::vector<std::vector<std::vector<double>>> rates;
  double wall_time_s = 0.0;
};

namespace experiment_detail {

/// Leading singular directions shared by all subcarriers: right singular
/// vectors of the vertically stacked channels at the transmitter, left
/// singular vectors of the horizontally stacked channels at the receiver.
/// For one subcarrier these are the optimal digital precoder and decoder.
inline ComplexMatrix shared_directions(const std::vector<ComplexMatrix>& H, int n_s, Side side) {
  if (H.size() == 1) {
    const ThinSvd s = svd_thin(H.front());
    return side == Side::Transmitter ? ComplexMatrix(s.V.leftCols(n_s)) : ComplexMatrix(s.U.leftCols(n_s));
  }
  const Eigen::Index rows = H.front().rows(), cols = H.front().cols();
  const auto K = static_cast<Eigen::Index>(H.size());
  if (side == Side::Transmitter) {
    ComplexMatrix S(rows * K, cols);
    for (Eigen::Index k = 0; k < K; ++k)
      S.middleRows(k * rows, rows) = H[static_cast<std::size_t>(k)];
    return svd_thin(S).V.leftCols(n_s);
  }
  ComplexMatrix S(rows, cols * K);
  for (Eigen::Index k = 0; k < K; ++k)
    S.middleCols(k * cols, cols) = H[static_cast<std::size_t>(k)];
  return svd_thin(S).U.leftCols(n_s);
}

/// Optimal unconstrained combiner for a fixed precoder: an orthonormal basis
/// of the range of H[k] F[k].
inline void optimal_digital_combiner(const std::vector<ComplexMatrix>& H, LinkDesign& link) {
  link.W_RF = ComplexMatrix::Identity(H.front().rows(), H.front().rows());
  link.W_BB.resize(H.size());
  for (std::size_t k = 0; k < H.size(); ++k)
    link.W_BB[k] = svd_thin(H[k] * link.F_RF * link.F_BB[k]).U;
}

inline void set_precoder(LinkDesign& link, HybridPrecoder p) {
  link.F_RF = std::move(p.analog);
  link.F_BB = std::move(p.digital);
}

inline void set_combiner(LinkDesign& link, HybridPrecoder p) {
  link.W_RF = std::move(p.analog);
  link.W_BB = std::move(p.digital);
}

/// Replicates a single digital matrix across subcarriers.
inline HybridPrecoder broadcast(HybridPrecoder p, std::size_t K) {
  p.digital.resize(K, p.digital.front());
  return p;
}

} // namespace experiment_detail

/// Channel of realization r, one matrix per subcarrier.
inline std::vector<ComplexMatrix> realization_channels(const ExperimentConfig& cfg, int r) {
  Rng rng = make_substream(cfg.seed, static_cast<std::uint64_t>(r), StreamTag::Channel);
  const ChannelRealization ch = sample_channel(cfg.tx_geometry(), cfg.rx_geometry(), cfg.channel, rng);
  std::vector<ComplexMatrix> H(static_cast<std::size_t>(cfg.subcarriers));
  for (int k = 0; k < cfg.subcarriers; ++k)
    H[static_cast<std::size_t>(k)] = frequency_channel(ch, k, cfg.subcarriers);
  return H;
}

/// Designs precoder and combiner of `algorithm` for realization r. Random
/// starting points come from per-realization streams that do not depend on
/// the algorithm, so algorithms are compared on matched seeds.
inline LinkDesign design_link(const ExperimentConfig& cfg, Algorithm algorithm, int r) {
  using namespace experiment_detail;
  Rng chan_rng = make_substream(cfg.seed, static_cast<std::uint64_t>(r), StreamTag::Channel);
  const ChannelRealization ch = sample_channel(cfg.tx_geometry(), cfg.rx_geometry(), cfg.channel, chan_rng);
  const std::size_t K = static_cast<std::size_t>(cfg.subcarriers);
  std::vector<ComplexMatrix> H(K), F_opt(K), W_opt(K);
  for (std::size_t k = 0; k < K; ++k) {
    H[k] = frequency_channel(ch, static_cast<int>(k), cfg.subcarriers);
    OptimalPair op = optimal_pair(H[k], cfg.n_s);
    F_opt[k] = std::move(op.precoder);
    W_opt[k] = std::move(op.decoder);
  }
  const std::uint64_t tx_seed = make_substream(cfg.seed, static_cast<std::uint64_t>(r), StreamTag::Precoder)();
  const std::uint64_t rx_seed = make_substream(cfg.seed, static_cast<std::uint64_t>(r), StreamTag::Combiner)();
  const AltMinParams tx_params = cfg.altmin_params(tx_seed);
  const AltMinParams rx_params = cfg.altmin_params(rx_seed);
  const CgParams cg = cfg.cg_params();
  const bool hybrid_rx = cfg.combiner_mode == CombinerMode::Hybrid;

  LinkDesign link;
  switch (algorithm) {
  case Algorithm::Digital:
    link.F_RF = ComplexMatrix::Identity(cfg.n_t, cfg.n_t);
    link.F_BB = F_opt;
    link.W_RF = ComplexMatrix::Identity(cfg.n_r, cfg.n_r);
    link.W_BB = W_opt;
    return link;
  case Algorithm::MoAltMin:
    set_precoder(link, mo_altmin(F_opt, cfg.n_rf_t, tx_params, cg).precoder);
    if (hybrid_rx)
      set_combiner(link, design_combiner(W_opt, cfg.n_rf_r, FullyConnectedAlgorithm::MoAltMin, rx_params, cg).precoder);
    break;
  case Algorithm::PeAltMin:
    set_precoder(link, pe_altmin(F_opt, cfg.n_rf_t, tx_params).precoder);
    if (hybrid_rx)
      set_combiner(link, design_combiner(W_opt, cfg.n_rf_r, FullyConnectedAlgorithm::PeAltMin, rx_params).precoder);
    break;
  case Algorithm::SdrAltMin:
    set_precoder(link, sdr_altmin(F_opt, cfg.n_rf_t, tx_params).precoder);
    if (hybrid_rx)
      set_combiner(link, sdr_altmin(W_opt, cfg.n_rf_r, rx_params, Side::Receiver).precoder);
    break;
  case Algorithm::Omp:
    set_precoder(link, omp_hybrid(F_opt, transmit_candidates(ch, cfg.tx_geometry()), cfg.n_rf_t).design.precoder);
    if (hybrid_rx)
      set_combiner(link, omp_hybrid(W_opt, receive_candidates(ch, cfg.rx_geometry()), cfg.n_rf_r, Side::Receiver)
                             .design.precoder);
    break;
  case Algorithm::AnalogBf:
    set_precoder(link, broadcast(analog_beamforming(shared_directions(H, cfg.n_s, Side::Transmitter), cfg.n_s,
                                                    Side::Transmitter, cfg.structure),
                                 K));
    if (hybrid_rx)
      set_combiner(link, broadcast(analog_beamforming(shared_directions(H, cfg.n_s, Side::Receiver), cfg.n_s,
                                                      Side::Receiver, cfg.structure),
                                   K));
    break;
  }
  if (!hybrid_rx)
    optimal_digital_combiner(H, link);
  return link;
}

/// Rate of every configured algorithm and SNR for realization r: out[a][s].
inline std::vector<std::vector<double>> realization_rates(const ExperimentConfig& cfg, int r) {
  const std::vector<ComplexMatrix> H = realization_channels(cfg, r);
  std::vector<std::vector<double>> out;
  out.reserve(cfg.algorithms.size());
  for (Algorithm a : cfg.algorithms) {
    const LinkDesign link = design_link(cfg, a, r);
    std::vector<double> per_snr;
    per_snr.reserve(cfg.snr_db.size());
    for (double snr : cfg.snr_db)
      per_snr.push_back(spectral_efficiency(H, link.F_RF, link.F_BB, link.W_RF, link.W_BB, LinkBudget::from_snr_db(snr)));
    out.push_back(std::move(per_snr));
  }
  return out;
}

inline int effective_workers(const ExperimentConfig& cfg) {
  if (cfg.workers > 0)
    return cfg.workers;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Per-realization rates. Realizations are spread over worker threads but
/// each depends only on (seed, index), so the result does not depend on the
/// worker count. The first failure in realization order is rethrown.
inline ExperimentTrace run_trace(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const int R = cfg.realizations;
  std::vector<std::vector<std::vector<double>>> per_real(static_cast<std::size_t>(R));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(R));
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (int r = next++; r < R && !failed; r = next++) {
      try {
        per_real[static_cast<std::size_t>(r)] = realization_rates(cfg, r);
      } catch (...) {
        errors[static_cast<std::size_t>(r)] = std::current_exception();
        failed = true;
      }
    }
  };
  const int n_workers = std::min(effective_workers(cfg), R);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w)
      pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e)
      std::rethrow_exception(e);

  ExperimentTrace trace;
  trace.rates.assign(cfg.algorithms.size(),
                     std::vector<std::vector<double>>(cfg.snr_db.size(), std::vector<double>(static_cast<std::size_t>(R))));
  for (std::size_t r = 0; r < per_real.size(); ++r)
    for (std::size_t a = 0; a < cfg.algorithms.size(); ++a)
      for (std::size_t s = 0; s < cfg.snr_db.size(); ++s)
        trace.rates[a][s][r] = per_real[r][a][s];
  trace.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return trace;
}

/// One row per (algorithm, SNR), algorithms in configured order. The sample
/// standard deviation is reported (zero for a single realization).
/// wall_time_s is the duration of the whole run when timing is enabled.
inline std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  const ExperimentTrace trace = run_trace(cfg);
  std::vector<ResultRow> rows;
  for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
    const Algorithm alg = cfg.algorithms[a];
    const Structure st = structure_of(alg, cfg.structure);
    const int n_rf = st == Structure::Digital ? cfg.n_t : cfg.n_rf_t;
    for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
      const std::vector<double>& x = trace.rates[a][s];
      double sum = 0.0;
      for (double v : x)
        sum += v;
      const double mean = sum / static_cast<double>(x.size());
      double ss = 0.0;
      for (double v : x)
        ss += (v - mean) * (v - mean);
      ResultRow row;
      row.algorithm = result_label(alg);
      row.structure = to_string(st);
      row.snr_db = cfg.snr_db[s];
      row.n_rf = n_rf;
      row.subcarriers = cfg.subcarriers;
      row.mean_rate = mean;
      row.std_rate = x.size() > 1 ? std::sqrt(ss / static_cast<double>(x.size() - 1)) : 0.0;
      row.mean_energy_eff = energy_efficiency(std::max(mean, 0.0), st, n_rf, cfg.n_t, cfg.power);
      row.realizations = cfg.realizations;
      row.wall_time_s = cfg.record_timing ? trace.wall_time_s : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Configuration for one sweep value.
inline ExperimentConfig sweep_point(ExperimentConfig cfg, SweepAxis axis, double value) {
  switch (axis) {
  case SweepAxis::Snr:
    cfg.snr_db = {value};
    break;
  case SweepAxis::NRf:
    if (value != std::floor(value))
      throw ValidationError("sweep: n_rf values must be integers");
    cfg.n_rf_t = cfg.n_rf_r = static_cast<int>(value);
    break;
  }
  return cfg;
}

/// run_experiment for each value in turn, concatenated. Every value is
/// validated before any realization runs.
inline std::vector<ResultRow> sweep(const ExperimentConfig& cfg, SweepAxis axis, const std::vector<double>& values) {
  if (values.empty())
    throw ValidationError("sweep: at least one value required");
  std::vector<ExperimentConfig> points;
  points.reserve(values.size());
  for (double v : values) {
    points.push_back(sweep_point(cfg, axis, v));
    points.back().validate();
  }
  std::vector<ResultRow> rows;
  for (const auto& p : points) {
    auto block = run_experiment(p);
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

} // namespace hybridprec::harness

#endif
