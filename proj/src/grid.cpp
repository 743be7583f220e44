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

#include "mmwblock/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "mmwblock/errors.hpp"

namespace mmwblock {
namespace {

constexpr double kAngleTol = 1e-9;

bool nearly_integer(double x) {
  return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x));
}

void check_axis(const std::vector<double>& v, const char* name, double lo, double hi,
                bool hi_inclusive) {
  if (v.empty()) throw ConfigError(fmt::format("{} axis is empty", name));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double a = v[i];
    const bool above_hi = hi_inclusive ? a > hi : a >= hi;
    if (!std::isfinite(a) || a < lo || above_hi) {
      throw ConfigError(fmt::format("{} value {} out of range", name, a));
    }
    if (i > 0 && v[i] - v[i - 1] <= kAngleTol) {
      throw ConfigError(fmt::format("{} values must be strictly ascending (at {})", name, a));
    }
  }
  if (v.size() > 2) {
    const double step = v[1] - v[0];
    for (std::size_t i = 2; i < v.size(); ++i) {
      if (std::abs((v[i] - v[i - 1]) - step) > 1e-6 * std::max(1.0, step)) {
        throw ConfigError(fmt::format("{} axis is not uniform near {}", name, v[i]));
      }
    }
  }
}

bool same_axis(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kAngleTol) return false;
  }
  return true;
}

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

}  // namespace

AngularGrid::AngularGrid(std::vector<double> phi_deg, std::vector<double> theta_deg)
    : AngularGrid(phi_deg, theta_deg, std::vector<bool>(phi_deg.size() * theta_deg.size(), true)) {}

AngularGrid::AngularGrid(std::vector<double> phi_deg, std::vector<double> theta_deg,
                         std::vector<bool> valid)
    : phi_(std::move(phi_deg)), theta_(std::move(theta_deg)), valid_(std::move(valid)) {
  check_axis(phi_, "phi", 0.0, 360.0, false);
  check_axis(theta_, "theta", 0.0, 180.0, false);
  if (theta_.front() <= 0.0) throw ConfigError("theta values must be > 0");
  if (valid_.size() != phi_.size() * theta_.size()) {
    throw ConfigError("validity mask size does not match grid");
  }
  for (std::size_t i = 0; i < valid_.size(); ++i) {
    if (valid_[i]) valid_points_.push_back(i);
  }
  if (valid_points_.empty()) throw ConfigError("grid has no valid points");
}

double AngularGrid::phi_step() const { return phi_.size() > 1 ? phi_[1] - phi_[0] : 0.0; }
double AngularGrid::theta_step() const { return theta_.size() > 1 ? theta_[1] - theta_[0] : 0.0; }

std::optional<std::size_t> AngularGrid::find(double phi_deg, double theta_deg) const {
  auto locate = [](const std::vector<double>& axis, double a) -> std::optional<std::size_t> {
    auto it = std::lower_bound(axis.begin(), axis.end(), a - 1e-6);
    if (it == axis.end() || std::abs(*it - a) > 1e-6) return std::nullopt;
    return static_cast<std::size_t>(it - axis.begin());
  };
  auto ip = locate(phi_, phi_deg);
  auto it = locate(theta_, theta_deg);
  if (!ip || !it) return std::nullopt;
  return index(*ip, *it);
}

bool operator==(const AngularGrid& a, const AngularGrid& b) {
  return same_axis(a.phi_, b.phi_) && same_axis(a.theta_, b.theta_) && a.valid_ == b.valid_;
}

AngularGrid make_grid(double phi_step, double theta_min, double theta_max,
                      std::optional<double> theta_step) {
  const double t_step = theta_step.value_or(phi_step);
  if (!(phi_step > 0.0 && phi_step <= 90.0)) {
    throw ConfigError(fmt::format("phi step {} must lie in (0, 90]", phi_step));
  }
  if (!(t_step > 0.0)) throw ConfigError("theta step must be positive");
  if (!(theta_min > 0.0 && theta_min < theta_max && theta_max < 180.0)) {
    throw ConfigError(fmt::format("theta range [{}, {}] must satisfy 0 < min < max < 180",
                                  theta_min, theta_max));
  }
  const double n_phi = 360.0 / phi_step;
  const double n_theta = (theta_max - theta_min) / t_step;
  if (!nearly_integer(n_phi)) {
    throw ConfigError(fmt::format("phi step {} does not divide 360", phi_step));
  }
  if (!nearly_integer(n_theta)) {
    throw ConfigError(fmt::format("theta step {} does not divide [{}, {}]", t_step, theta_min,
                                  theta_max));
  }
  std::vector<double> phi(static_cast<std::size_t>(std::lround(n_phi)));
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = static_cast<double>(i) * phi_step;
  std::vector<double> theta(static_cast<std::size_t>(std::lround(n_theta)) + 1);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    theta[i] = theta_min + static_cast<double>(i) * t_step;
  }
  return AngularGrid(std::move(phi), std::move(theta));
}

void require_same_grid(const AngularGrid& a, const AngularGrid& b, const char* where) {
  if (!(a == b)) throw GridMismatch(where);
}

WeightField::WeightField(AngularGrid grid, std::vector<double> raw)
    : grid_(std::move(grid)), w_(std::move(raw)) {
  if (w_.size() != grid_.size()) throw ConfigError("weight field size does not match grid");
  double total = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!grid_.is_valid(i)) {
      w_[i] = 0.0;
      continue;
    }
    if (!(w_[i] >= 0.0) || !std::isfinite(w_[i])) throw ConfigError("weights must be finite and >= 0");
    total += w_[i];
  }
  if (!(total > 0.0)) throw DataError("weight field has zero total mass");
  for (double& x : w_) x /= total;
}

WeightField solid_angle_weights(const AngularGrid& grid) {
  std::vector<double> raw(grid.size(), 0.0);
  for (std::size_t idx : grid.valid_points()) raw[idx] = std::sin(deg2rad(grid.theta_at(idx)));
  return WeightField(grid, std::move(raw));
}

WeightField uniform_weights(const AngularGrid& grid) {
  return WeightField(grid, std::vector<double>(grid.size(), 1.0));
}

PointMask::PointMask(AngularGrid grid, bool fill)
    : grid_(std::move(grid)), bits_(grid_.size(), false) {
  if (fill) {
    for (std::size_t idx : grid_.valid_points()) bits_[idx] = true;
  }
}

PointMask::PointMask(AngularGrid grid, std::vector<bool> bits)
    : grid_(std::move(grid)), bits_(std::move(bits)) {
  if (bits_.size() != grid_.size()) throw ConfigError("mask size does not match grid");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (!grid_.is_valid(i)) bits_[i] = false;
  }
}

void PointMask::set(std::size_t idx, bool on) { bits_[idx] = on && grid_.is_valid(idx); }

std::size_t PointMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

PointMask PointMask::operator|(const PointMask& other) const {
  require_same_grid(grid_, other.grid_, "mask union");
  PointMask out(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] || other.bits_[i];
  return out;
}

PointMask PointMask::operator&(const PointMask& other) const {
  require_same_grid(grid_, other.grid_, "mask intersection");
  PointMask out(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] && other.bits_[i];
  return out;
}

PointMask PointMask::operator-(const PointMask& other) const {
  require_same_grid(grid_, other.grid_, "mask difference");
  PointMask out(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] && !other.bits_[i];
  return out;
}

bool PointMask::is_subset_of(const PointMask& other) const {
  require_same_grid(grid_, other.grid_, "mask inclusion");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

bool operator==(const PointMask& a, const PointMask& b) {
  return a.grid_ == b.grid_ && a.bits_ == b.bits_;
}

double fraction_of_sphere(const PointMask& mask, const WeightField& weights) {
  require_same_grid(mask.grid(), weights.grid(), "fraction_of_sphere");
  const auto& grid = mask.grid();
  double inside = 0.0;
  double total = 0.0;
  for (std::size_t idx : grid.valid_points()) {
    total += weights[idx];
    if (mask.contains(idx)) inside += weights[idx];
  }
  return 100.0 * inside / total;
}

Pattern::Pattern(AngularGrid grid, std::vector<double> values, PatternKind kind)
    : grid_(std::move(grid)),
      values_(std::move(values)),
      floored_(grid_.size(), false),
      kind_(kind) {
  if (values_.size() != grid_.size()) {
    throw ConfigError(fmt::format("pattern has {} values for a grid of {} points", values_.size(),
                                  grid_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double& v = values_[i];
    if (!grid_.is_valid(i)) {
      v = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    if (std::isnan(v)) {
      throw DataError(fmt::format("missing value at phi={} theta={}", grid_.phi_at(i),
                                  grid_.theta_at(i)));
    }
    if (kind_ == PatternKind::eirp && v < kFloorDb) {
      v = kFloorDb;
      floored_[i] = true;
    }
    if (!std::isfinite(v)) {
      throw DataError(fmt::format("non-finite value at phi={} theta={}", grid_.phi_at(i),
                                  grid_.theta_at(i)));
    }
  }
}

std::size_t Pattern::floored_count() const {
  return static_cast<std::size_t>(std::count(floored_.begin(), floored_.end(), true));
}

double Pattern::max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t idx : grid_.valid_points()) m = std::max(m, values_[idx]);
  return m;
}

double Pattern::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t idx : grid_.valid_points()) m = std::min(m, values_[idx]);
  return m;
}

void require_common_grid(const PatternSet& set, const char* where) {
  if (set.empty()) throw ConfigError(fmt::format("{}: pattern set is empty", where));
  for (const auto& p : set) require_same_grid(set.front().grid(), p.grid(), where);
}

}  // namespace mmwblock
