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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hybridprec/harness/config.hpp"
#include "hybridprec/harness/experiment.hpp"
#include "hybridprec/harness/report.hpp"

using namespace hybridprec;
using namespace hybridprec::harness;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n_t = 16;
  c.n_r = 4;
  c.n_s = 2;
  c.n_rf_t = c.n_rf_r = 2;
  c.algorithms = {Algorithm::Digital, Algorithm::MoAltMin, Algorithm::PeAltMin, Algorithm::SdrAltMin,
                  Algorithm::Omp, Algorithm::AnalogBf};
  c.snr_db = {-5.0, 5.0};
  c.realizations = 6;
  c.workers = 1;
  return c;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hybridprec_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const char* cli = std::getenv("HYBRIDPREC_CLI");
  REQUIRE(cli != nullptr);
  const std::string cmd = std::string("HYBRIDPREC_LOG=off \"") + cli + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("config file parsing", "[harness]") {
  const ExperimentConfig c = parse_config_string(R"(# comment
n_t = 64
n_r = 16   # trailing comment
n_s = 2
n_rf = 4
structure = partially
algorithms = digital, sdr-altmin, analog-bf
snr_db = -5, 0, 5
realizations = 20
subcarriers = 8
n_clusters = 3
n_rays = 4
cluster_powers = 1, 0.5, 0.25
angular_spread_deg = 5
p_common = 12
seed = 99
combiner = optimal-digital
record_timing = true
)");
  CHECK(c.n_t == 64);
  CHECK(c.n_r == 16);
  CHECK(c.n_rf_t == 4);
  CHECK(c.n_rf_r == 4);
  CHECK(c.structure == Structure::Partially);
  CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::Digital, Algorithm::SdrAltMin, Algorithm::AnalogBf});
  CHECK(c.snr_db == std::vector<double>{-5.0, 0.0, 5.0});
  CHECK(c.subcarriers == 8);
  CHECK(c.channel.cluster_powers == std::vector<double>{1.0, 0.5, 0.25});
  CHECK(c.channel.angular_spread_deg == 5.0);
  CHECK(c.power.p_common == 12.0);
  CHECK(c.seed == 99);
  CHECK(c.combiner_mode == CombinerMode::OptimalDigital);
  CHECK(c.record_timing);
}

TEST_CASE("config parsing rejects malformed input", "[harness]") {
  CHECK_THROWS_AS(parse_config_string("n_t 64\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_string("bogus = 1\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_string("n_t = sixty\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_string("algorithms = mo-altmin, magic\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_string("structure = diagonal\n"), ValidationError);
  CHECK_THROWS_AS(parse_config_string("n_t =\n"), ValidationError);
  CHECK_THROWS_AS(load_config("/nonexistent/hybridprec.cfg"), ValidationError);
}

TEST_CASE("config validation enforces dimension constraints", "[harness]") {
  CHECK_NOTHROW(ExperimentConfig{}.validate());
  ExperimentConfig c = small_config();
  CHECK_NOTHROW(c.validate());
  c.n_rf_t = 1;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config();
  c.n_rf_r = 5;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config();
  c.n_t = 15;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config();
  c.realizations = 0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = small_config();
  c.n_rf_t = c.n_rf_r = 3;
  CHECK_THROWS_AS(c.validate(), ValidationError); // analog-bf needs N_RF = N_s
  c.algorithms = {Algorithm::MoAltMin};
  CHECK_NOTHROW(c.validate());
  c.snr_db.clear();
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("figure presets carry the reference parameters", "[harness]") {
  for (int fig = 4; fig <= 9; ++fig)
    for (const FigureBlock& b : figure_preset(fig)) {
      CHECK_NOTHROW(b.config.validate());
      for (double v : b.values)
        CHECK_NOTHROW(sweep_point(b.config, b.axis, v).validate());
      CHECK(b.config.realizations == 1000);
    }
  const auto fig4 = figure_preset(4);
  const ExperimentConfig& c = fig4.front().config;
  CHECK(c.n_t == 144);
  CHECK(c.n_r == 36);
  CHECK(c.channel.n_clusters == 5);
  CHECK(c.channel.n_rays == 10);
  CHECK(c.n_s == 3);
  CHECK(c.n_rf_t == 3);
  CHECK(c.n_rf_r == 3);

  const auto fig8 = figure_preset(8);
  REQUIRE(fig8.size() == 1);
  CHECK(fig8[0].config.n_s == 6);
  CHECK(fig8[0].sweep);
  CHECK(fig8[0].axis == SweepAxis::NRf);
  CHECK(fig8[0].values == std::vector<double>{6, 7, 8, 9, 10, 11});
  CHECK(fig8[0].config.snr_db == std::vector<double>{0.0});

  CHECK(figure_preset(9).front().config.subcarriers == 128);
  CHECK_THROWS_AS(figure_preset(3), ValidationError);
}

TEST_CASE("run_experiment is deterministic for a fixed seed", "[harness]") {
  const ExperimentConfig c = small_config();
  const auto a = run_experiment(c);
  const auto b = run_experiment(c);
  CHECK(to_csv(a) == to_csv(b));
  REQUIRE(a.size() == c.algorithms.size() * c.snr_db.size());
  CHECK(a[0].algorithm == "digital");
  CHECK(a[0].snr_db == -5.0);
  CHECK(a[1].snr_db == 5.0);
  CHECK(a.back().algorithm == "analog-bf-standin");
  for (const auto& row : a) {
    CHECK(row.mean_rate >= 0.0);
    CHECK(row.realizations == 6);
    CHECK(row.wall_time_s == 0.0);
  }
  ExperimentConfig other = c;
  other.seed = 2;
  CHECK(to_csv(run_experiment(other)) != to_csv(a));
}

TEST_CASE("run_experiment is independent of the worker count", "[harness]") {
  ExperimentConfig c = small_config();
  c.subcarriers = 2;
  c.realizations = 9;
  const auto one = run_experiment(c);
  c.workers = 8;
  const auto eight = run_experiment(c);
  CHECK(one == eight);
}

TEST_CASE("matched seeds give the digital precoder the top rate", "[harness]") {
  const auto rows = run_experiment(small_config());
  for (std::size_t s = 0; s < 2; ++s)
    for (std::size_t a = 1; a < 6; ++a)
      CHECK(rows[a * 2 + s].mean_rate <= rows[s].mean_rate + 1e-9);
}

TEST_CASE("sweep concatenates experiments", "[harness]") {
  ExperimentConfig c = small_config();
  c.snr_db = {0.0};
  c.algorithms = {Algorithm::MoAltMin, Algorithm::SdrAltMin};
  CHECK(sweep(c, SweepAxis::Snr, {0.0}) == run_experiment(c));
  const auto rows = sweep(c, SweepAxis::NRf, {2, 3});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].n_rf == 2);
  CHECK(rows[2].n_rf == 3);
  CHECK_THROWS_AS(sweep(c, SweepAxis::NRf, {2, 1}), ValidationError);
  CHECK_THROWS_AS(sweep(c, SweepAxis::NRf, {2.5}), ValidationError);
  CHECK_THROWS_AS(sweep(c, SweepAxis::Snr, {}), ValidationError);
}

TEST_CASE("CSV output contract", "[harness]") {
  const auto rows = run_experiment(small_config());
  const std::string csv = to_csv(rows);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "algorithm,structure,snr_db,n_rf,subcarriers,mean_rate,std_rate,mean_energy_eff,realizations,wall_time_s");
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(parse_csv(csv) == rows);
  CHECK_THROWS_AS(parse_csv(std::string("wrong,header\n")), InvalidInput);
  CHECK_THROWS_AS(parse_csv(std::string(kCsvHeader) + "\nmo-altmin,fully,x,3,1,1,0,0,1,0\n"), InvalidInput);
}

TEST_CASE("emit writes files and refuses empty results", "[harness]") {
  const auto dir = fresh_dir("emit");
  CHECK_THROWS_AS(emit({}, OutputFormat::Csv, dir), ValidationError);
  CHECK_FALSE(std::filesystem::exists(dir / "results.csv"));

  ExperimentConfig c = small_config();
  c.realizations = 2;
  const auto rows = run_experiment(c);
  const auto written = emit(rows, OutputFormat::PlotScript, dir);
  REQUIRE(written.size() == 2);
  CHECK(parse_csv(read_file(dir / "results.csv")) == rows);
  CHECK(read_file(dir / "plot_results.py").find("results.csv") != std::string::npos);
  CHECK(parse_format("csv") == OutputFormat::Csv);
  CHECK_THROWS_AS(parse_format("xlsx"), ValidationError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("CLI exit codes", "[harness]") {
  const auto dir = fresh_dir("cli");
  const auto cfg = dir / "small.cfg";
  std::filesystem::create_directories(dir);
  std::ofstream(cfg) << "n_t = 16\nn_r = 4\nn_s = 2\nn_rf = 2\nalgorithms = digital, mo-altmin\n";
  const std::string common = " --config " + cfg.string() + " --realizations 2 --workers 1 --out " + dir.string();

  CHECK(run_cli("run" + common) == 0);
  const std::string first = read_file(dir / "results.csv");
  CHECK(run_cli("run" + common) == 0);
  CHECK(read_file(dir / "results.csv") == first);
  CHECK(run_cli("sweep --axis n_rf --values 2,3" + common) == 0);
  CHECK(parse_csv(read_file(dir / "results.csv")).size() == 4);

  CHECK(run_cli("sweep --axis n_rf --values 1,2" + common) == 2);
  CHECK(run_cli("sweep --axis bogus --values 2" + common) == 2);
  CHECK(run_cli("run --realizations 0 --out " + dir.string()) == 2);
  CHECK(run_cli("figure 12 --out " + dir.string()) == 2);
  CHECK(run_cli("run --config " + (dir / "missing.cfg").string()) == 2);
  CHECK(run_cli("") == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("shipped configuration files validate", "[harness]") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(HYBRIDPREC_CONFIG_DIR)) {
    if (entry.path().extension() != ".cfg")
      continue;
    ++seen;
    INFO(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path().string()).validate());
  }
  CHECK(seen >= 3);
  const ExperimentConfig d = load_config(std::string(HYBRIDPREC_CONFIG_DIR) + "/default.cfg");
  CHECK(d.n_t == 144);
  CHECK(d.power.p_ps == 0.01);
}
