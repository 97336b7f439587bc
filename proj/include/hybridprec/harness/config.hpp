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

#ifndef HYBRIDPREC_HARNESS_CONFIG_HPP
#define HYBRIDPREC_HARNESS_CONFIG_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hybridprec/channel.hpp"
#include "hybridprec/errors.hpp"
#include "hybridprec/fully_connected.hpp"
#include "hybridprec/manifold.hpp"
#include "hybridprec/reference.hpp"

namespace hybridprec::harness {

enum class Algorithm { Digital, MoAltMin, PeAltMin, SdrAltMin, Omp, AnalogBf };

enum class CombinerMode {
  Hybrid,         // receiver runs the same family of design as the transmitter
  OptimalDigital, // receiver uses the optimal unconstrained combiner for the designed precoder
};

/// Name used in config files.
inline const char* config_name(Algorithm a) {
  switch (a) {
  case Algorithm::Digital:
    return "digital";
  case Algorithm::MoAltMin:
    return "mo-altmin";
  case Algorithm::PeAltMin:
    return "pe-altmin";
  case Algorithm::SdrAltMin:
    return "sdr-altmin";
  case Algorithm::Omp:
    return "omp";
  case Algorithm::AnalogBf:
    return "analog-bf";
  }
  return "?";
}

/// Name written to result tables. The analog-only baseline is a documented
/// stand-in and is labelled as such.
inline const char* result_label(Algorithm a) { return a == Algorithm::AnalogBf ? "analog-bf-standin" : config_name(a); }

inline Algorithm parse_algorithm(std::string_view s) {
  for (Algorithm a : {Algorithm::Digital, Algorithm::MoAltMin, Algorithm::PeAltMin, Algorithm::SdrAltMin,
                      Algorithm::Omp, Algorithm::AnalogBf})
    if (s == config_name(a))
      return a;
  throw ValidationError("unknown algorithm '" + std::string(s) + "'");
}

inline const char* config_name(CombinerMode m) { return m == CombinerMode::Hybrid ? "hybrid" : "optimal-digital"; }

inline CombinerMode parse_combiner(std::string_view s) {
  if (s == "hybrid")
    return CombinerMode::Hybrid;
  if (s == "optimal-digital")
    return CombinerMode::OptimalDigital;
  throw ValidationError("unknown combiner mode '" + std::string(s) + "'");
}

inline Structure parse_structure(std::string_view s) {
  if (s == "fully")
    return Structure::Fully;
  if (s == "partially")
    return Structure::Partially;
  throw ValidationError("structure must be 'fully' or 'partially', got '" + std::string(s) + "'");
}

/// Hardware structure an algorithm designs for. The analog-only stand-in
/// follows the configured structure.
inline Structure structure_of(Algorithm a, Structure configured) {
  switch (a) {
  case Algorithm::Digital:
    return Structure::Digital;
  case Algorithm::MoAltMin:
  case Algorithm::PeAltMin:
  case Algorithm::Omp:
    return Structure::Fully;
  case Algorithm::SdrAltMin:
    return Structure::Partially;
  case Algorithm::AnalogBf:
    return configured;
  }
  return configured;
}

struct ExperimentConfig {
  int n_t = 144;
  int n_r = 36;
  int n_s = 3;
  int n_rf_t = 3;
  int n_rf_r = 3;
  Structure structure = Structure::Fully;
  std::vector<Algorithm> algorithms{Algorithm::Digital, Algorithm::MoAltMin};
  std::vector<double> snr_db{0.0};
  int realizations = 1000;
  int subcarriers = 1;
  ClusterConfig channel;
  double antenna_spacing = 0.5; // in wavelengths, both ends
  PowerModel power;
  std::uint64_t seed = 1;
  CombinerMode combiner_mode = CombinerMode::Hybrid;
  int altmin_max_iters = 100;
  double altmin_rel_tol = 1e-4;
  int cg_max_iters = 200;
  int workers = 0;            // 0 selects the hardware concurrency
  bool record_timing = false; // wall_time_s is 0 unless set, keeping output bytes reproducible

  ArrayGeometry tx_geometry() const { return {n_t, antenna_spacing}; }
  ArrayGeometry rx_geometry() const { return {n_r, antenna_spacing}; }

  AltMinParams altmin_params(std::uint64_t design_seed) const { return {altmin_max_iters, altmin_rel_tol, design_seed}; }

  CgParams cg_params() const {
    CgParams p;
    p.max_iters = cg_max_iters;
    return p;
  }

  /// Throws ValidationError on the first violated constraint.
  void validate() const {
    auto fail = [](const std::string& msg) { throw ValidationError("config: " + msg); };
    if (n_s < 1)
      fail("n_s must be at least 1");
    if (!(n_s <= n_rf_t && n_rf_t <= n_t))
      fail("need n_s <= n_rf_t <= n_t (n_s=" + std::to_string(n_s) + ", n_rf_t=" + std::to_string(n_rf_t) +
           ", n_t=" + std::to_string(n_t) + ")");
    if (!(n_s <= n_rf_r && n_rf_r <= n_r))
      fail("need n_s <= n_rf_r <= n_r (n_s=" + std::to_string(n_s) + ", n_rf_r=" + std::to_string(n_rf_r) +
           ", n_r=" + std::to_string(n_r) + ")");
    if (n_s > n_r || n_s > n_t)
      fail("n_s exceeds an antenna count");
    if (algorithms.empty())
      fail("at least one algorithm required");
    if (snr_db.empty())
      fail("at least one SNR value required");
    for (double s : snr_db)
      if (!std::isfinite(s))
        fail("SNR values must be finite");
    if (realizations < 1)
      fail("realizations must be at least 1");
    if (subcarriers < 1)
      fail("subcarriers must be at least 1");
    if (workers < 0)
      fail("workers must be nonnegative");
    if (altmin_max_iters < 1 || cg_max_iters < 1)
      fail("iteration limits must be positive");
    if (!(altmin_rel_tol > 0.0))
      fail("altmin_rel_tol must be positive");
    for (Algorithm a : algorithms)
      if (a == Algorithm::AnalogBf && (n_rf_t != n_s || n_rf_r != n_s))
        fail("analog-bf requires n_rf_t = n_rf_r = n_s");
    try {
      tx_geometry().validate();
      rx_geometry().validate();
      channel.validate();
      power.validate();
    } catch (const InvalidInput& e) {
      fail(e.what());
    }
    if (n_s > channel.n_clusters * channel.n_rays)
      fail("n_s exceeds the channel rank bound n_clusters * n_rays");
  }
};

namespace config_detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos)
      break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ValidationError("config: key '" + std::string(key) + "' has malformed value '" + std::string(v) + "'");
  return out;
}

inline bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1")
    return true;
  if (v == "false" || v == "0")
    return false;
  throw ValidationError("config: key '" + std::string(key) + "' expects true or false");
}

} // namespace config_detail

/// Applies one `key = value` assignment to cfg.
inline void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  using namespace config_detail;
  auto integer = [&] { return parse_number<int>(key, value); };
  auto real = [&] { return parse_number<double>(key, value); };

  if (key == "n_t")
    cfg.n_t = integer();
  else if (key == "n_r")
    cfg.n_r = integer();
  else if (key == "n_s")
    cfg.n_s = integer();
  else if (key == "n_rf_t")
    cfg.n_rf_t = integer();
  else if (key == "n_rf_r")
    cfg.n_rf_r = integer();
  else if (key == "n_rf")
    cfg.n_rf_t = cfg.n_rf_r = integer();
  else if (key == "structure")
    cfg.structure = parse_structure(value);
  else if (key == "algorithms") {
    cfg.algorithms.clear();
    for (auto item : split_list(value))
      cfg.algorithms.push_back(parse_algorithm(item));
  } else if (key == "snr_db") {
    cfg.snr_db.clear();
    for (auto item : split_list(value))
      cfg.snr_db.push_back(parse_number<double>(key, item));
  } else if (key == "realizations")
    cfg.realizations = integer();
  else if (key == "subcarriers")
    cfg.subcarriers = integer();
  else if (key == "n_clusters") {
    cfg.channel.n_clusters = integer();
    cfg.channel.cluster_powers.assign(static_cast<std::size_t>(std::max(cfg.channel.n_clusters, 0)), 1.0);
  } else if (key == "n_rays")
    cfg.channel.n_rays = integer();
  else if (key == "cluster_powers") {
    cfg.channel.cluster_powers.clear();
    for (auto item : split_list(value))
      cfg.channel.cluster_powers.push_back(parse_number<double>(key, item));
  } else if (key == "angular_spread_deg")
    cfg.channel.angular_spread_deg = real();
  else if (key == "antenna_spacing")
    cfg.antenna_spacing = real();
  else if (key == "p_common")
    cfg.power.p_common = real();
  else if (key == "p_rf")
    cfg.power.p_rf = real();
  else if (key == "p_ps")
    cfg.power.p_ps = real();
  else if (key == "p_pa")
    cfg.power.p_pa = real();
  else if (key == "seed")
    cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "combiner")
    cfg.combiner_mode = parse_combiner(value);
  else if (key == "altmin_max_iters")
    cfg.altmin_max_iters = integer();
  else if (key == "altmin_rel_tol")
    cfg.altmin_rel_tol = real();
  else if (key == "cg_max_iters")
    cfg.cg_max_iters = integer();
  else if (key == "workers")
    cfg.workers = integer();
  else if (key == "record_timing")
    cfg.record_timing = parse_bool(key, value);
  else
    throw ValidationError("config: unknown key '" + std::string(key) + "'");
}

/// Reads `key = value` lines on top of `base`; '#' starts a comment.
/// Settings apply in file order, so n_clusters should precede cluster_powers.
inline ExperimentConfig parse_config(std::istream& in, ExperimentConfig base = {}) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos)
      s = s.substr(0, hash);
    s = config_detail::trim(s);
    if (s.empty())
      continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const auto key = config_detail::trim(s.substr(0, eq));
    const auto value = config_detail::trim(s.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ValidationError("config line " + std::to_string(lineno) + ": empty key or value");
    try {
      apply_setting(base, key, value);
    } catch (const ValidationError& e) {
      throw ValidationError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

inline ExperimentConfig parse_config_string(const std::string& text, ExperimentConfig base = {}) {
  std::istringstream in(text);
  return parse_config(in, std::move(base));
}

inline ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {}) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open config file '" + path + "'");
  return parse_config(in, std::move(base));
}

enum class SweepAxis { Snr, NRf };

inline SweepAxis parse_axis(std::string_view s) {
  if (s == "snr")
    return SweepAxis::Snr;
  if (s == "n_rf")
    return SweepAxis::NRf;
  throw ValidationError("sweep axis must be 'snr' or 'n_rf', got '" + std::string(s) + "'");
}

/// One block of a figure: a base configuration plus an optional sweep.
struct FigureBlock {
  ExperimentConfig config;
  bool sweep = false;
  SweepAxis axis = SweepAxis::Snr;
  std::vector<double> values;
};

/// Presets reproducing the simulation figures. All blocks use the array
/// sizes and channel model of the reference setup (144 x 36 USPA, 5 clusters
/// of 10 rays, 10 degree spread) and 1000 realizations.
inline std::vector<FigureBlock> figure_preset(int figure) {
  const std::vector<double> snr_axis{-15.0, -10.0, -5.0, 0.0, 5.0, 10.0};
  ExperimentConfig base;
  base.snr_db = {0.0};
  std::vector<FigureBlock> blocks;

  auto with_streams = [&](int n_s, int n_rf) {
    ExperimentConfig c = base;
    c.n_s = n_s;
    c.n_rf_t = c.n_rf_r = n_rf;
    return c;
  };

  switch (figure) {
  case 4: {
    // The fully-connected curves use hybrid combiners; SDR-AltMin and the
    // analog-only stand-in are paired with an optimal digital decoder. The
    // stand-in keeps the configured (fully-connected) structure.
    ExperimentConfig fully = with_streams(3, 3);
    fully.algorithms = {Algorithm::Digital, Algorithm::MoAltMin, Algorithm::Omp};
    fully.snr_db = snr_axis;
    ExperimentConfig partial = fully;
    partial.algorithms = {Algorithm::SdrAltMin, Algorithm::AnalogBf};
    partial.combiner_mode = CombinerMode::OptimalDigital;
    blocks.push_back({fully});
    blocks.push_back({partial});
    break;
  }
  case 5: {
    ExperimentConfig c = with_streams(2, 2);
    c.algorithms = {Algorithm::Digital, Algorithm::MoAltMin, Algorithm::Omp, Algorithm::SdrAltMin};
    blocks.push_back({c, true, SweepAxis::NRf, {2, 3, 4, 5, 6, 7, 8}});
    break;
  }
  case 6: {
    ExperimentConfig c = with_streams(2, 2);
    c.algorithms = {Algorithm::MoAltMin, Algorithm::SdrAltMin};
    blocks.push_back({c, true, SweepAxis::NRf, {2, 3, 4, 5, 6, 7, 8}});
    break;
  }
  case 7: {
    for (int n_s : {2, 4, 8}) {
      ExperimentConfig c = with_streams(n_s, n_s);
      c.algorithms = {Algorithm::MoAltMin, Algorithm::PeAltMin};
      c.snr_db = snr_axis;
      blocks.push_back({c});
    }
    break;
  }
  case 8: {
    ExperimentConfig c = with_streams(6, 6);
    c.algorithms = {Algorithm::Digital, Algorithm::MoAltMin, Algorithm::PeAltMin, Algorithm::Omp};
    blocks.push_back({c, true, SweepAxis::NRf, {6, 7, 8, 9, 10, 11}});
    break;
  }
  case 9: {
    for (int n_rf : {3, 4}) {
      ExperimentConfig c = with_streams(3, n_rf);
      c.subcarriers = 128;
      c.algorithms = {Algorithm::Digital, Algorithm::MoAltMin, Algorithm::PeAltMin, Algorithm::Omp};
      c.snr_db = snr_axis;
      blocks.push_back({c});
    }
    break;
  }
  default:
    throw ValidationError("figure must be one of 4, 5, 6, 7, 8, 9");
  }
  return blocks;
}

} // namespace hybridprec::harness

#endif
