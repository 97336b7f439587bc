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

// Command-line front end for the Monte Carlo harness.
//
//   hybridprec run    [--config PATH] [overrides]
//   hybridprec sweep  --axis snr|n_rf --values v1,v2,... [--config PATH] [overrides]
//   hybridprec figure <4|5|6|7|8|9> [overrides]
//
// Exit status: 0 on success, 2 on invalid input, 3 when a solver fails.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hybridprec/harness/config.hpp"
#include "hybridprec/harness/experiment.hpp"
#include "hybridprec/harness/report.hpp"

namespace hh = hybridprec::harness;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> realizations;
  std::optional<int> workers;
  std::optional<std::string> combiner;
  bool timing = false;

  void apply(hh::ExperimentConfig& cfg) const {
    if (seed)
      cfg.seed = *seed;
    if (realizations)
      cfg.realizations = *realizations;
    if (workers)
      cfg.workers = *workers;
    if (combiner)
      cfg.combiner_mode = hh::parse_combiner(*combiner);
    if (timing)
      cfg.record_timing = true;
  }
};

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("hybridprec");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S] [%^%l%$] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("HYBRIDPREC_LOG")) {
    const auto level = spdlog::level::from_str(env);
    if (level == spdlog::level::off && std::string(env) != "off")
      spdlog::warn("HYBRIDPREC_LOG='{}' is not a log level; keeping 'info'", env);
    else
      spdlog::set_level(level);
  }
}

std::vector<hh::ResultRow> run_block(const hh::FigureBlock& block) {
  const auto& c = block.config;
  spdlog::info("N_t={} N_r={} N_s={} N_RF={} K={} realizations={} combiner={}", c.n_t, c.n_r, c.n_s, c.n_rf_t,
               c.subcarriers, c.realizations, hh::config_name(c.combiner_mode));
  if (block.sweep)
    return hh::sweep(c, block.axis, block.values);
  return hh::run_experiment(c);
}

} // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Hybrid precoding Monte Carlo harness"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "results";
  std::string format = "csv";
  Overrides ov;

  app.add_option("--config", config_path, "Configuration file (key = value lines)");
  app.add_option("--seed", ov.seed, "Master seed");
  app.add_option("--realizations", ov.realizations, "Channel realizations per point");
  app.add_option("--workers", ov.workers, "Worker threads (0 = all cores)");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--format", format, "Output format: csv | plot-script")->capture_default_str();
  app.add_option("--combiner", ov.combiner, "Receiver: hybrid | optimal-digital");
  app.add_flag("--timing", ov.timing, "Record wall-clock time in the results");

  auto* run_cmd = app.add_subcommand("run", "Run one experiment");

  auto* sweep_cmd = app.add_subcommand("sweep", "Run an experiment for each value of one parameter");
  std::string axis;
  std::vector<double> values;
  sweep_cmd->add_option("--axis", axis, "snr | n_rf")->required();
  sweep_cmd->add_option("--values", values, "Sweep values")->required()->delimiter(',');

  auto* fig_cmd = app.add_subcommand("figure", "Reproduce one of the simulation figures");
  int figure = 0;
  fig_cmd->add_option("number", figure, "Figure number (4-9)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const hh::OutputFormat fmt = hh::parse_format(format);
    std::vector<hh::FigureBlock> blocks;
    if (*fig_cmd) {
      if (!config_path.empty())
        spdlog::warn("--config is ignored by the figure subcommand");
      blocks = hh::figure_preset(figure);
    } else {
      hh::FigureBlock block;
      if (!config_path.empty())
        block.config = hh::load_config(config_path);
      if (*sweep_cmd) {
        block.sweep = true;
        block.axis = hh::parse_axis(axis);
        block.values = values;
      }
      blocks.push_back(std::move(block));
    }

    for (auto& b : blocks) {
      ov.apply(b.config);
      b.config.validate();
      if (b.sweep)
        for (double v : b.values)
          hh::sweep_point(b.config, b.axis, v).validate();
    }

    std::vector<hh::ResultRow> rows;
    for (const auto& b : blocks) {
      auto part = run_block(b);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    for (const auto& p : hh::emit(rows, fmt, out_dir))
      spdlog::info("wrote {}", p.string());
    (void)run_cmd;
    return 0;
  } catch (const std::invalid_argument& e) {
    spdlog::error("{}", e.what());
    return kExitValidation;
  } catch (const hybridprec::SolverError& e) {
    spdlog::error("solver failure: {}", e.what());
    return kExitSolver;
  } catch (const hybridprec::DegenerateError& e) {
    spdlog::error("solver failure: {}", e.what());
    return kExitSolver;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
