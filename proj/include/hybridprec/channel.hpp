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

#ifndef HYBRIDPREC_CHANNEL_HPP
#define HYBRIDPREC_CHANNEL_HPP

#include <cmath>
#include <string>
#include <vector>

#include "hybridprec/numerics.hpp"
#include "hybridprec/random.hpp"

namespace hybridprec {

/// Uniform square planar array with sqrt(N) x sqrt(N) elements.
struct ArrayGeometry {
  int n_antennas = 1;
  double spacing_over_wavelength = 0.5;

  int side() const { return static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_antennas)))); }

  void validate() const {
    if (n_antennas < 1 || side() * side() != n_antennas)
      throw InvalidInput("ArrayGeometry: antenna count " + std::to_string(n_antennas) +
                         " is not a perfect square");
    if (!(spacing_over_wavelength > 0.0))
      throw InvalidInput("ArrayGeometry: spacing must be positive");
  }
};

struct ClusterConfig {
  int n_clusters = 5;
  int n_rays = 10;
  std::vector<double> cluster_powers = std::vector<double>(5, 1.0);
  double angular_spread_deg = 10.0;

  void validate() const {
    if (n_clusters < 1 || n_rays < 1)
      throw InvalidInput("ClusterConfig: need at least one cluster and one ray");
    if (static_cast<int>(cluster_powers.size()) != n_clusters)
      throw InvalidInput("ClusterConfig: one power per cluster required");
    for (double p : cluster_powers)
      if (!(p > 0.0))
        throw InvalidInput("ClusterConfig: cluster powers must be positive");
    if (!(angular_spread_deg >= 0.0))
      throw InvalidInput("ClusterConfig: angular spread must be nonnegative");
  }

  static ClusterConfig uniform(int clusters, int rays, double spread_deg = 10.0) {
    return {clusters, rays, std::vector<double>(static_cast<std::size_t>(clusters), 1.0), spread_deg};
  }
};

struct ChannelRealization {
  ComplexMatrix gains;   // N_cl x N_ray
  RealMatrix aoa_azimuth; // N_cl x N_ray, radians
  RealMatrix aoa_elevation;
  RealMatrix aod_azimuth;
  RealMatrix aod_elevation;
  ComplexMatrix h_narrowband;              // N_r x N_t
  std::vector<ComplexMatrix> cluster_taps; // per-cluster contribution to h_narrowband

  int n_clusters() const { return static_cast<int>(cluster_taps.size()); }
};

/// Array response of a USPA. Antenna n sits at grid position
/// (p, q) = (n / sqrt(N), n mod sqrt(N)).
inline ComplexVector array_response(const ArrayGeometry& geom, double azimuth, double elevation) {
  geom.validate();
  const int side = geom.side();
  const double k = 2.0 * kPi * geom.spacing_over_wavelength;
  const double u = std::sin(azimuth) * std::sin(elevation);
  const double v = std::cos(elevation);
  const double amp = 1.0 / std::sqrt(static_cast<double>(geom.n_antennas));
  ComplexVector a(geom.n_antennas);
  for (int n = 0; n < geom.n_antennas; ++n) {
    const int p = n / side;
    const int q = n % side;
    a(n) = std::polar(amp, k * (p * u + q * v));
  }
  return a;
}

namespace detail {

inline double wrap_azimuth(double phi) {
  phi = std::fmod(phi, 2.0 * kPi);
  return phi < 0.0 ? phi + 2.0 * kPi : phi;
}

// Fold into [0, pi] by reflection about the array broadside axis.
inline double wrap_elevation(double theta) {
  theta = wrap_azimuth(theta);
  return theta > kPi ? 2.0 * kPi - theta : theta;
}

} // namespace detail

/// Draw one Saleh-Valenzuela realization.
///
/// Cluster mean angles are uniform (azimuth over [0, 2pi), elevation over
/// [0, pi)); rays scatter around them with a Laplacian whose standard
/// deviation equals the configured angular spread. Ray gains are
/// CN(0, sigma_i^2) and the sum is scaled by sqrt(N_t N_r / (N_cl N_ray)).
inline ChannelRealization sample_channel(const ArrayGeometry& geom_t, const ArrayGeometry& geom_r,
                                         const ClusterConfig& cfg, Rng& rng) {
  geom_t.validate();
  geom_r.validate();
  cfg.validate();

  const int ncl = cfg.n_clusters;
  const int nray = cfg.n_rays;
  const int nt = geom_t.n_antennas;
  const int nr = geom_r.n_antennas;
  const double scale = cfg.angular_spread_deg * (kPi / 180.0) / std::sqrt(2.0);
  const double gamma = std::sqrt(static_cast<double>(nt) * nr / (static_cast<double>(ncl) * nray));

  ChannelRealization ch;
  ch.gains.resize(ncl, nray);
  ch.aoa_azimuth.resize(ncl, nray);
  ch.aoa_elevation.resize(ncl, nray);
  ch.aod_azimuth.resize(ncl, nray);
  ch.aod_elevation.resize(ncl, nray);

  std::uniform_real_distribution<double> uaz(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> uel(0.0, kPi);
  for (int i = 0; i < ncl; ++i) {
    const double mean_aoa_az = uaz(rng);
    const double mean_aoa_el = uel(rng);
    const double mean_aod_az = uaz(rng);
    const double mean_aod_el = uel(rng);
    for (int l = 0; l < nray; ++l) {
      ch.aoa_azimuth(i, l) = detail::wrap_azimuth(mean_aoa_az + laplacian(rng, scale));
      ch.aoa_elevation(i, l) = detail::wrap_elevation(mean_aoa_el + laplacian(rng, scale));
      ch.aod_azimuth(i, l) = detail::wrap_azimuth(mean_aod_az + laplacian(rng, scale));
      ch.aod_elevation(i, l) = detail::wrap_elevation(mean_aod_el + laplacian(rng, scale));
      ch.gains(i, l) = complex_gaussian(rng, cfg.cluster_powers[static_cast<std::size_t>(i)]);
    }
  }

  ch.h_narrowband = ComplexMatrix::Zero(nr, nt);
  ch.cluster_taps.reserve(static_cast<std::size_t>(ncl));
  for (int i = 0; i < ncl; ++i) {
    ComplexMatrix tap = ComplexMatrix::Zero(nr, nt);
    for (int l = 0; l < nray; ++l) {
      const ComplexVector ar = array_response(geom_r, ch.aoa_azimuth(i, l), ch.aoa_elevation(i, l));
      const ComplexVector at = array_response(geom_t, ch.aod_azimuth(i, l), ch.aod_elevation(i, l));
      tap.noalias() += (gamma * ch.gains(i, l)) * ar * at.adjoint();
    }
    ch.h_narrowband += tap;
    ch.cluster_taps.push_back(std::move(tap));
  }
  return ch;
}

/// Frequency-domain channel of subcarrier k: cluster i acts as delay tap i.
inline ComplexMatrix frequency_channel(const ChannelRealization& ch, int k, int n_subcarriers) {
  if (n_subcarriers < 1 || k < 0 || k >= n_subcarriers)
    throw InvalidInput("frequency_channel: subcarrier " + std::to_string(k) + " out of range [0, " +
                       std::to_string(n_subcarriers) + ")");
  if (ch.cluster_taps.empty())
    throw InvalidInput("frequency_channel: realization has no cluster taps");
  ComplexMatrix H = ComplexMatrix::Zero(ch.cluster_taps.front().rows(), ch.cluster_taps.front().cols());
  for (int i = 0; i < ch.n_clusters(); ++i) {
    // Reduce i*k mod K first so the phase argument stays small and exact.
    const long long tap_phase = (static_cast<long long>(i) * k) % n_subcarriers;
    if (tap_phase == 0) {
      H += ch.cluster_taps[static_cast<std::size_t>(i)];
      continue;
    }
    const Complex w = std::polar(1.0, -2.0 * kPi * static_cast<double>(tap_phase) / n_subcarriers);
    H += w * ch.cluster_taps[static_cast<std::size_t>(i)];
  }
  return H;
}

} // namespace hybridprec

#endif
