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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace mmwblock {

// Values below this level (dBm / dB) are clamped and flagged so that CDFs
// stay well defined when synthetic nulls reach -inf.
inline constexpr double kFloorDb = -200.0;

// Uniform (phi, theta) sampling lattice in degrees. Points are stored
// theta-major: index = i_theta * phi_count() + i_phi.
class AngularGrid {
 public:
  AngularGrid(std::vector<double> phi_deg, std::vector<double> theta_deg);
  AngularGrid(std::vector<double> phi_deg, std::vector<double> theta_deg,
              std::vector<bool> valid);

  std::size_t phi_count() const { return phi_.size(); }
  std::size_t theta_count() const { return theta_.size(); }
  std::size_t size() const { return valid_.size(); }

  const std::vector<double>& phi_values() const { return phi_; }
  const std::vector<double>& theta_values() const { return theta_; }

  // Zero for a single-valued axis.
  double phi_step() const;
  double theta_step() const;

  std::size_t index(std::size_t i_phi, std::size_t i_theta) const {
    return i_theta * phi_.size() + i_phi;
  }
  double phi_at(std::size_t idx) const { return phi_[idx % phi_.size()]; }
  double theta_at(std::size_t idx) const { return theta_[idx / phi_.size()]; }

  bool is_valid(std::size_t idx) const { return valid_[idx]; }
  std::size_t valid_count() const { return valid_points_.size(); }
  const std::vector<std::size_t>& valid_points() const { return valid_points_; }

  std::optional<std::size_t> find(double phi_deg, double theta_deg) const;

  friend bool operator==(const AngularGrid& a, const AngularGrid& b);

 private:
  std::vector<double> phi_;
  std::vector<double> theta_;
  std::vector<bool> valid_;
  std::vector<std::size_t> valid_points_;
};

// phi in {0, phi_step, ..., 360 - phi_step}; theta in {theta_min, ...,
// theta_max} at theta_step (defaults to phi_step). All points valid.
AngularGrid make_grid(double phi_step, double theta_min, double theta_max,
                      std::optional<double> theta_step = std::nullopt);

// Throws GridMismatch naming `where` unless the grids are identical.
void require_same_grid(const AngularGrid& a, const AngularGrid& b, const char* where);

// Per-point weights normalized to sum to one over the valid points; zero at
// invalid points.
class WeightField {
 public:
  WeightField(AngularGrid grid, std::vector<double> raw);

  const AngularGrid& grid() const { return grid_; }
  double operator[](std::size_t idx) const { return w_[idx]; }
  std::span<const double> values() const { return w_; }

 private:
  AngularGrid grid_;
  std::vector<double> w_;
};

// sin(theta) weighting, the Jacobian of a uniform phi-theta scan.
WeightField solid_angle_weights(const AngularGrid& grid);
// Equal weight per valid point (used for unweighted statistics).
WeightField uniform_weights(const AngularGrid& grid);

// Boolean subset of a grid's valid points.
class PointMask {
 public:
  explicit PointMask(AngularGrid grid, bool fill = false);
  PointMask(AngularGrid grid, std::vector<bool> bits);

  const AngularGrid& grid() const { return grid_; }
  bool contains(std::size_t idx) const { return bits_[idx]; }
  void set(std::size_t idx, bool on);
  std::size_t count() const;
  bool empty() const { return count() == 0; }

  PointMask operator|(const PointMask& other) const;
  PointMask operator&(const PointMask& other) const;
  PointMask operator-(const PointMask& other) const;
  bool is_subset_of(const PointMask& other) const;

  friend bool operator==(const PointMask& a, const PointMask& b);

 private:
  AngularGrid grid_;
  std::vector<bool> bits_;
};

// 100 * sum(weights in mask) / sum(weights over valid points).
double fraction_of_sphere(const PointMask& mask, const WeightField& weights);

enum class PatternKind { eirp, loss };

// One dB-scale scalar per valid grid point. Invalid points hold NaN.
// EIRP values below kFloorDb are clamped and flagged.
class Pattern {
 public:
  Pattern(AngularGrid grid, std::vector<double> values, PatternKind kind);

  const AngularGrid& grid() const { return grid_; }
  PatternKind kind() const { return kind_; }
  double operator[](std::size_t idx) const { return values_[idx]; }
  std::span<const double> values() const { return values_; }

  bool is_floored(std::size_t idx) const { return floored_[idx]; }
  std::size_t floored_count() const;

  double max() const;
  double min() const;

 private:
  AngularGrid grid_;
  std::vector<double> values_;
  std::vector<bool> floored_;
  PatternKind kind_;
};

// One pattern per codebook beam, all on one grid.
using PatternSet = std::vector<Pattern>;

void require_common_grid(const PatternSet& set, const char* where);

}  // namespace mmwblock
