// SPDX-License-Identifier: Apache-2.0
//
// mmwblock: hand/body blockage analysis for millimeter wave beam patterns
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

#include "mmwblock/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "mmwblock/errors.hpp"

namespace mmwblock {
namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double d) { return d * kPi / 180.0; }

double wrap360(double a) {
  double x = std::fmod(a, 360.0);
  if (x < 0.0) x += 360.0;
  return x;
}

// Raised-cosine ramp from 0 at the border to 1 at `width` inside.
double ramp(double depth, double width) {
  if (width <= 0.0) return depth >= 0.0 ? 1.0 : 0.0;
  if (depth <= 0.0) return 0.0;
  if (depth >= width) return 1.0;
  return 0.5 * (1.0 - std::cos(kPi * depth / width));
}

double array_factor_at(double spacing, std::span<const std::complex<double>> weights,
                       double sin_component) {
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double arg = 2.0 * kPi * spacing * static_cast<double>(k) * sin_component;
    sum += weights[k] * std::complex<double>(std::cos(arg), std::sin(arg));
  }
  const double mag = std::abs(sum);
  if (mag <= 0.0) return kFloorDb;
  return std::max(20.0 * std::log10(mag), kFloorDb);
}

void check_weights(const ArrayConfig& config, std::span<const std::complex<double>> weights) {
  if (weights.size() != static_cast<std::size_t>(config.n_elements)) {
    throw ConfigError(fmt::format("{} weights for a {}-element array", weights.size(),
                                  config.n_elements));
  }
  for (const auto& w : weights) {
    if (std::abs(w) > 1.0 + 1e-12) throw ConfigError("weight magnitude exceeds 1");
  }
}

}  // namespace

void ArrayConfig::validate() const {
  if (n_elements < 1) throw ConfigError("array needs at least one element");
  if (!(spacing > 0.0)) throw ConfigError("element spacing must be positive");
  if (phase_bits < 0 || phase_bits > 8) throw ConfigError("phase_bits must lie in [0, 8]");
  if (!std::isfinite(tx_power_dbm) || !std::isfinite(element_peak_gain_dbi)) {
    throw ConfigError("tx power and element gain must be finite");
  }
  if (!(front_to_back_db >= 0.0)) throw ConfigError("front_to_back_db must be >= 0");
}

void BeamSpec::validate(const ArrayConfig& config) const {
  if (!(std::abs(scan_angle_deg) < 90.0)) {
    throw ConfigError(fmt::format("scan angle {} must satisfy |scan| < 90", scan_angle_deg));
  }
  if (!amplitude_taper.empty()) {
    if (amplitude_taper.size() != static_cast<std::size_t>(config.n_elements)) {
      throw ConfigError("amplitude taper length must equal the element count");
    }
    for (double a : amplitude_taper) {
      if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("taper gains must lie in [0, 1]");
    }
  }
}

void AngularRegion::validate() const {
  auto in = [](double v, double lo, double hi) { return std::isfinite(v) && v >= lo && v <= hi; };
  if (!in(phi_lo, 0.0, 360.0) || !in(phi_hi, 0.0, 360.0)) {
    throw ConfigError("region phi bounds must lie in [0, 360]");
  }
  if (!in(theta_lo, 0.0, 180.0) || !in(theta_hi, 0.0, 180.0) || theta_lo > theta_hi) {
    throw ConfigError("region theta bounds must satisfy 0 <= lo <= hi <= 180");
  }
}

double AngularRegion::phi_depth(double phi_deg) const {
  const double width = phi_hi - phi_lo >= 360.0 ? 360.0 : wrap360(phi_hi - phi_lo);
  if (width >= 360.0) return 360.0;
  const double offset = wrap360(phi_deg - phi_lo);
  if (offset <= width) return std::min(offset, width - offset);
  return -std::min(offset - width, 360.0 - offset);
}

double AngularRegion::theta_depth(double theta_deg) const {
  return std::min(theta_deg - theta_lo, theta_hi - theta_deg);
}

bool AngularRegion::contains(double phi_deg, double theta_deg) const {
  return phi_depth(phi_deg) >= 0.0 && theta_depth(theta_deg) >= 0.0;
}

double patch_exponent() { return 3.0 / (10.0 * std::log10(2.0)); }

double quantize_phase_deg(double phase_deg, int bits) {
  if (bits <= 0) return phase_deg;
  const double step = 360.0 / static_cast<double>(1 << bits);
  const double level = std::ceil(wrap360(phase_deg) / step - 0.5);
  return wrap360(level * step);
}

std::vector<double> steering_phases_deg(const ArrayConfig& config, const BeamSpec& beam) {
  config.validate();
  beam.validate(config);
  std::vector<double> phases(static_cast<std::size_t>(config.n_elements));
  const double progression = -360.0 * config.spacing * std::sin(deg2rad(beam.scan_angle_deg));
  for (std::size_t k = 0; k < phases.size(); ++k) {
    phases[k] = quantize_phase_deg(progression * static_cast<double>(k), config.phase_bits);
  }
  return phases;
}

Weights steering_weights(const ArrayConfig& config, const BeamSpec& beam) {
  const auto phases = steering_phases_deg(config, beam);
  Weights w(phases.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double a = beam.amplitude_taper.empty() ? 1.0 : beam.amplitude_taper[k];
    w[k] = std::polar(a, deg2rad(phases[k]));
  }
  return w;
}

double array_factor_db(const ArrayConfig& config, std::span<const std::complex<double>> weights,
                       double angle_off_boresight_deg) {
  check_weights(config, weights);
  return array_factor_at(config.spacing, weights, std::sin(deg2rad(angle_off_boresight_deg)));
}

double element_gain_db(const ArrayConfig& config, double along_boresight, double along_axis) {
  const double peak = config.element_peak_gain_dbi;
  switch (config.element) {
    case ElementKind::isotropic:
      return peak;
    case ElementKind::patch: {
      const double back = peak - config.front_to_back_db;
      if (along_boresight <= 0.0) return back;
      return std::max(peak + 20.0 * patch_exponent() * std::log10(along_boresight), back);
    }
    case ElementKind::dipole: {
      const double c2 = 1.0 - along_axis * along_axis;
      if (c2 <= 0.0) return kFloorDb;
      return std::max(peak + 10.0 * std::log10(c2), kFloorDb);
    }
  }
  return peak;
}

double scan_plane_eirp_dbm(const ArrayConfig& config, std::span<const std::complex<double>> weights,
                           double psi_deg) {
  check_weights(config, weights);
  const double psi = deg2rad(psi_deg);
  const double s = std::sin(psi);
  return config.tx_power_dbm + element_gain_db(config, std::cos(psi), s) +
         array_factor_at(config.spacing, weights, s);
}

double scan_plane_beamwidth_deg(const ArrayConfig& config, const BeamSpec& beam,
                                double resolution_deg) {
  if (!(resolution_deg > 0.0)) throw ConfigError("beamwidth resolution must be positive");
  const auto w = steering_weights(config, beam);
  const auto n = static_cast<std::size_t>(std::llround(360.0 / resolution_deg));
  std::vector<double> cut(n);
  for (std::size_t i = 0; i < n; ++i) {
    cut[i] = scan_plane_eirp_dbm(config, w, -180.0 + static_cast<double>(i) * resolution_deg);
  }
  const auto peak_it = std::max_element(cut.begin(), cut.end());
  const auto peak = static_cast<std::size_t>(peak_it - cut.begin());
  const double level = *peak_it - 3.0;
  std::size_t inside = 1;
  for (std::size_t step = 1; step < n && cut[(peak + step) % n] >= level; ++step) ++inside;
  for (std::size_t step = 1; step < n && cut[(peak + n - step) % n] >= level; ++step) ++inside;
  return static_cast<double>(std::min(inside, n)) * resolution_deg;
}

PatternSet synth_pattern_set(const ArrayConfig& config, const std::vector<BeamSpec>& beams,
                             const AngularGrid& grid) {
  config.validate();
  if (beams.empty()) throw ConfigError("codebook needs at least one beam");
  const double bore = deg2rad(config.boresight_phi_deg);
  PatternSet out;
  out.reserve(beams.size());
  for (const auto& beam : beams) {
    const auto w = steering_weights(config, beam);
    std::vector<double> values(grid.size(), 0.0);
    for (std::size_t idx : grid.valid_points()) {
      const double st = std::sin(deg2rad(grid.theta_at(idx)));
      const double rel = deg2rad(grid.phi_at(idx)) - bore;
      const double along_boresight = st * std::cos(rel);
      const double along_axis = st * std::sin(rel);
      values[idx] = config.tx_power_dbm + element_gain_db(config, along_boresight, along_axis) +
                    array_factor_at(config.spacing, w, along_axis);
    }
    out.emplace_back(grid, std::move(values), PatternKind::eirp);
  }
  return out;
}

double mask_delta_db(const BlockageMask& mask, double phi_deg, double theta_deg, int beam) {
  double delta = 0.0;
  for (const auto& r : mask.regions) {
    if (r.beam && *r.beam != beam) continue;
    const double f = ramp(r.region.phi_depth(phi_deg), r.edge_taper_deg) *
                     ramp(r.region.theta_depth(theta_deg), r.edge_taper_deg);
    if (f >= 1.0) {
      delta = r.delta_db;
    } else if (f > 0.0) {
      delta = delta * (1.0 - f) + r.delta_db * f;
    }
  }
  return delta;
}

PatternSet apply_blockage_mask(const PatternSet& free, const BlockageMask& mask) {
  require_common_grid(free, "apply_blockage_mask");
  for (const auto& r : mask.regions) {
    r.region.validate();
    if (!std::isfinite(r.delta_db)) throw ConfigError("mask delta must be finite");
    if (!(r.edge_taper_deg >= 0.0)) throw ConfigError("edge taper must be >= 0");
    if (r.beam && (*r.beam < 0 || static_cast<std::size_t>(*r.beam) >= free.size())) {
      throw ConfigError(fmt::format("mask region targets missing beam {}", *r.beam));
    }
  }
  PatternSet out;
  out.reserve(free.size());
  for (std::size_t b = 0; b < free.size(); ++b) {
    const auto& p = free[b];
    const auto& grid = p.grid();
    std::vector<double> values(p.values().begin(), p.values().end());
    for (std::size_t idx : grid.valid_points()) {
      values[idx] -= mask_delta_db(mask, grid.phi_at(idx), grid.theta_at(idx), static_cast<int>(b));
    }
    out.emplace_back(grid, std::move(values), p.kind());
  }
  return out;
}

}  // namespace mmwblock
