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
#include <string>
#include <string_view>
#include <vector>

#include "mmwblock/analysis.hpp"
#include "mmwblock/grid.hpp"
#include "mmwblock/roi.hpp"

namespace mmwblock {

struct LossStats {
  double mean = 0.0;
  double median = 0.0;
  double std_dev = 0.0;
  double sphere_fraction = 0.0;  // percent
  std::size_t n_points = 0;
};

struct GaussianFit {
  std::string family = "gaussian";
  double mu = 0.0;
  double sigma = 0.0;

  double cdf(double x) const;
};

// loss = free - blocked per direction; negative values are reflection gains.
Pattern loss_field(const Pattern& free, const Pattern& blocked);

// Weighted mean, median (smallest value whose cumulative weight reaches one
// half) and population standard deviation over the region.
LossStats loss_stats(const Pattern& loss, const PointMask& region, const WeightField& w);
LossStats loss_stats(const Pattern& loss, const RoIMask& roi, const WeightField& w);

GaussianFit gaussian_fit(const Pattern& loss, const PointMask& region, const WeightField& w);
GaussianFit gaussian_fit(const Pattern& loss, const RoIMask& roi, const WeightField& w);

inline constexpr std::string_view kStatsWeighting =
    "sin(theta) solid-angle weights restricted to the RoI, population std";

struct PercentileLossEntry {
  double percentile = 0.0;
  double free_dbm = 0.0;
  double blocked_dbm = 0.0;
  double loss_db = 0.0;
};

struct ThresholdEntry {
  double threshold_dbm = 0.0;
  CoverageLost lost;
  RoiImprovement improvement;  // matched R1 vs R5 at this level
};

// One summary row: gross-loss range over percentiles, relative coverage
// lost over thresholds and relative RoI improvement over thresholds.
struct SummaryTable {
  std::vector<PercentileLossEntry> percentile_losses;  // descending percentile
  std::vector<ThresholdEntry> thresholds;              // descending threshold
  double gross_loss_min = 0.0;
  double gross_loss_max = 0.0;
  std::optional<double> rel_lost_min;
  std::optional<double> rel_lost_max;
  std::optional<double> improvement_min;
  std::optional<double> improvement_max;
};

SummaryTable study_summary(const PatternSet& free, const PatternSet& blocked,
                           std::vector<double> thresholds_dbm, std::vector<double> percentiles,
                           const WeightField& w);

}  // namespace mmwblock
