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

#include <optional>
#include <string_view>
#include <vector>

#include "mmwblock/grid.hpp"

namespace mmwblock {

// Best-of-codebook pattern: per-direction max over beams.
struct OverlayPattern {
  Pattern pattern;
  std::vector<int> best_beam;  // -1 at invalid points
};

// Ties go to the lowest beam index.
OverlayPattern overlay_best_beam(const PatternSet& set);

// Step CDF over distinct sample values (ascending) with cumulative weight.
class WeightedCDF {
 public:
  WeightedCDF(std::vector<double> values, std::vector<double> cumulative);

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& cumulative() const { return cumulative_; }
  std::size_t size() const { return values_.size(); }

  // F(x) = weight of samples <= x.
  double at(double x) const;
  // F(x-) = weight of samples < x.
  double before(double x) const;

 private:
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

// Builds a CDF from (value, weight) samples; weights need not be normalized.
WeightedCDF make_cdf(std::vector<std::pair<double, double>> samples);

WeightedCDF weighted_cdf(const Pattern& p, const WeightField& w);
// Restricted to a region and renormalized over it.
WeightedCDF weighted_cdf(const Pattern& p, const WeightField& w, const PointMask& region);

// Percent of the weighted sphere with value >= threshold.
double coverage_above(const Pattern& p, const WeightField& w, double threshold);

// Percentile p means the value exceeded over p% of the weighted sphere: p = 90
// probes weak directions and p = 20 strong ones. Steps are not interpolated.
inline constexpr std::string_view kPercentileConvention =
    "top-p: largest sample value v with 1 - F(v-) >= p/100, no interpolation";

double percentile_value(const WeightedCDF& cdf, double p);

// Horizontal gap between the two CDFs at percentile p (free minus blocked).
double percentile_loss(const WeightedCDF& free_cdf, const WeightedCDF& blocked_cdf, double p);

struct CoverageLost {
  double free_pct = 0.0;
  double blocked_pct = 0.0;
  double abs = 0.0;
  std::optional<double> rel;  // absent when free_pct == 0
};

CoverageLost coverage_lost(double free_pct, double blocked_pct);
CoverageLost coverage_lost(const Pattern& free, const Pattern& blocked, const WeightField& w,
                           double threshold);

}  // namespace mmwblock
