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

#ifndef HYBRIDPREC_HARNESS_REPORT_HPP
#define HYBRIDPREC_HARNESS_REPORT_HPP

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "hybridprec/errors.hpp"
#include "hybridprec/harness/experiment.hpp"

namespace hybridprec::harness {

inline constexpr const char* kCsvHeader =
    "algorithm,structure,snr_db,n_rf,subcarriers,mean_rate,std_rate,mean_energy_eff,realizations,wall_time_s";

enum class OutputFormat { Csv, PlotScript };

inline OutputFormat parse_format(std::string_view s) {
  if (s == "csv")
    return OutputFormat::Csv;
  if (s == "plot-script")
    return OutputFormat::PlotScript;
  throw ValidationError("format must be 'csv' or 'plot-script', got '" + std::string(s) + "'");
}

namespace report_detail {

// Shortest representation that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_field(const std::string& field, int line) {
  T out{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw InvalidInput("csv line " + std::to_string(line) + ": malformed field '" + field + "'");
  return out;
}

} // namespace report_detail

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  using report_detail::format_double;
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.algorithm << ',' << r.structure << ',' << format_double(r.snr_db) << ',' << r.n_rf << ','
        << r.subcarriers << ',' << format_double(r.mean_rate) << ',' << format_double(r.std_rate) << ','
        << format_double(r.mean_energy_eff) << ',' << r.realizations << ',' << format_double(r.wall_time_s)
        << '\n';
}

inline std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

inline std::vector<ResultRow> parse_csv(std::istream& in) {
  using report_detail::parse_field;
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw InvalidInput("csv: missing or unexpected header");
  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty())
      continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string field; std::getline(ls, field, ',');)
      f.push_back(field);
    if (f.size() != 10)
      throw InvalidInput("csv line " + std::to_string(lineno) + ": expected 10 fields");
    ResultRow r;
    r.algorithm = f[0];
    r.structure = f[1];
    r.snr_db = parse_field<double>(f[2], lineno);
    r.n_rf = parse_field<int>(f[3], lineno);
    r.subcarriers = parse_field<int>(f[4], lineno);
    r.mean_rate = parse_field<double>(f[5], lineno);
    r.std_rate = parse_field<double>(f[6], lineno);
    r.mean_energy_eff = parse_field<double>(f[7], lineno);
    r.realizations = parse_field<int>(f[8], lineno);
    r.wall_time_s = parse_field<double>(f[9], lineno);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_csv(in);
}

/// Generic matplotlib script: one line per (algorithm, structure), rate
/// against whichever of snr_db / n_rf varies, plus energy efficiency when
/// n_rf varies.
inline std::string plot_script(const std::string& csv_name) {
  std::string s = R"PY(#!/usr/bin/env python3
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = sys.argv[1] if len(sys.argv) > 1 else "@CSV@"
rows = list(csv.DictReader(open(path, newline="")))
snrs = {r["snr_db"] for r in rows}
x_key = "n_rf" if len(snrs) == 1 else "snr_db"
metrics = [("mean_rate", "Spectral efficiency (bits/s/Hz)")]
if x_key == "n_rf":
    metrics.append(("mean_energy_eff", "Energy efficiency (bits/Hz/J)"))

for metric, label in metrics:
    series = defaultdict(list)
    for r in rows:
        series[(r["algorithm"], r["structure"], r["subcarriers"])].append((float(r[x_key]), float(r[metric])))
    fig, ax = plt.subplots()
    for (alg, structure, k), pts in sorted(series.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", label=f"{alg} ({structure}, K={k})")
    ax.set_xlabel("SNR (dB)" if x_key == "snr_db" else "RF chains")
    ax.set_ylabel(label)
    ax.grid(True)
    ax.legend()
    fig.savefig(f"{metric}.png", dpi=150)
)PY";
  const std::string token = "@CSV@";
  s.replace(s.find(token), token.size(), csv_name);
  return s;
}

/// Writes results.csv (and plot_results.py for the plot-script format) into
/// `dir`, creating it if needed. Returns the written paths.
inline std::vector<std::filesystem::path> emit(const std::vector<ResultRow>& rows, OutputFormat format,
                                               const std::filesystem::path& dir) {
  if (rows.empty())
    throw ValidationError("emit: no results to write");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw std::runtime_error("emit: cannot create directory '" + dir.string() + "': " + ec.message());

  auto write_file = [](const std::filesystem::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out)
      throw std::runtime_error("emit: cannot open '" + p.string() + "' for writing");
    out << content;
    out.close();
    if (!out)
      throw std::runtime_error("emit: failed writing '" + p.string() + "'");
  };

  std::vector<std::filesystem::path> written;
  const std::filesystem::path csv = dir / "results.csv";
  write_file(csv, to_csv(rows));
  written.push_back(csv);
  if (format == OutputFormat::PlotScript) {
    const std::filesystem::path script = dir / "plot_results.py";
    write_file(script, plot_script(csv.filename().string()));
    written.push_back(script);
  }
  return written;
}

} // namespace hybridprec::harness

#endif
