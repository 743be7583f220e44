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

#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "mmwblock/grid.hpp"

namespace mmwblock {

enum class ElementKind { patch, dipole, isotropic };

// Uniform linear array. The array boresight points along (phi =
// boresight_phi_deg, theta = 90) and the array axis lies in the theta = 90
// plane, so that plane is the scan plane.
struct ArrayConfig {
  int n_elements = 1;
  double spacing = 0.5;  // wavelengths
  ElementKind element = ElementKind::isotropic;
  int phase_bits = 0;  // 0 = unquantized
  double tx_power_dbm = 0.0;
  double element_peak_gain_dbi = 0.0;
  double boresight_phi_deg = 90.0;
  double front_to_back_db = 30.0;  // patch level behind the ground plane

  void validate() const;
};

struct BeamSpec {
  double scan_angle_deg = 0.0;
  std::vector<double> amplitude_taper;  // empty = uniform

  void validate(const ArrayConfig& config) const;
};

// Rectangle in (phi, theta). A phi interval with lo > hi wraps through 0.
struct AngularRegion {
  double phi_lo = 0.0;
  double phi_hi = 360.0;
  double theta_lo = 0.0;
  double theta_hi = 180.0;

  void validate() const;
  bool contains(double phi_deg, double theta_deg) const;
  // Distance (deg) to the nearest border along each axis; negative outside.
  double phi_depth(double phi_deg) const;
  double theta_depth(double theta_deg) const;
};

struct MaskRegion {
  AngularRegion region;
  double delta_db = 0.0;  // positive = attenuation, negative = reflection gain
  double edge_taper_deg = 0.0;
  std::optional<int> beam;  // restrict to one beam index
};

// Later regions override earlier ones where they overlap.
struct BlockageMask {
  std::vector<MaskRegion> regions;
};

using Weights = std::vector<std::complex<double>>;

// Exponent in the patch element model 20*q*log10(cos(off-boresight)); gives
// a 90 degree single-element half-power beamwidth.
double patch_exponent();

// Nearest of 2^bits uniform levels on [0, 360); ties go to the lower level.
double quantize_phase_deg(double phase_deg, int bits);

// Per-element phases (degrees, in [0, 360) when quantized).
std::vector<double> steering_phases_deg(const ArrayConfig& config, const BeamSpec& beam);
Weights steering_weights(const ArrayConfig& config, const BeamSpec& beam);

// 20 log10 |sum_k w_k exp(i 2 pi d k sin(angle))|, floored at kFloorDb.
double array_factor_db(const ArrayConfig& config, std::span<const std::complex<double>> weights,
                       double angle_off_boresight_deg);

// Element gain (dBi) for a direction given by its components along the
// boresight and array axis.
double element_gain_db(const ArrayConfig& config, double along_boresight, double along_axis);

// EIRP in the scan plane at signed angle psi from boresight.
double scan_plane_eirp_dbm(const ArrayConfig& config, std::span<const std::complex<double>> weights,
                           double psi_deg);

// Contiguous -3 dB width around the scan-plane peak, measured by stepping
// psi over the full circle at `resolution_deg`.
double scan_plane_beamwidth_deg(const ArrayConfig& config, const BeamSpec& beam,
                                double resolution_deg = 0.1);

PatternSet synth_pattern_set(const ArrayConfig& config, const std::vector<BeamSpec>& beams,
                             const AngularGrid& grid);

// Attenuation (dB) the mask applies at a direction for a given beam.
double mask_delta_db(const BlockageMask& mask, double phi_deg, double theta_deg, int beam = 0);

PatternSet apply_blockage_mask(const PatternSet& free, const BlockageMask& mask);

}  // namespace mmwblock
