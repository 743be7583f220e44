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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mmwblock/analysis.hpp"
#include "mmwblock/grid.hpp"
#include "mmwblock/roi.hpp"
#include "mmwblock/synth.hpp"

namespace mmwblock {

enum class ModelKind { flat_region, constant_loss, measured_mask };

std::string_view to_string(ModelKind kind);

// A rule producing a per-direction loss field.
struct BlockageModel {
  ModelKind kind = ModelKind::constant_loss;
  double loss_db = 0.0;
  std::optional<AngularRegion> region;  // flat_region only
  std::optional<Pattern> loss_pattern;  // measured_mask only

  static BlockageModel flat_region(AngularRegion region, double loss_db = 30.0);
  static BlockageModel constant_loss(double loss_db);
  static BlockageModel measured_mask(Pattern loss);
};

// Named presets: "3gpp-flat-30" (needs a region), "prior-hand-15.3",
// "prior-body-8.5".
BlockageModel model_preset(std::string_view name,
                           std::optional<AngularRegion> region = std::nullopt);
std::vector<std::string> model_preset_names();

// Subtracts the model's loss field from the freespace pattern.
Pattern apply_model(const Pattern& free, const BlockageModel& model);

inline constexpr double kComparePercentiles[] = {90.0, 80.0, 50.0, 20.0};

struct PercentileDelta {
  double percentile = 0.0;
  double free_dbm = 0.0;
  double candidate_dbm = 0.0;
  double delta_db = 0.0;  // free - candidate
};

struct CandidateReport {
  std::string name;
  WeightedCDF cdf;
  std::vector<PercentileDelta> deltas;
};

struct CrossOver {
  std::string first;
  std::string second;
  std::vector<double> eirp_dbm;  // 0.1 dB resolution
};

struct ComparisonReport {
  WeightedCDF free_cdf;
  std::vector<CandidateReport> candidates;
  std::vector<CrossOver> crossovers;
};

// EIRP values at which F_a - F_b changes sign, evaluated on the merged value
// set and rounded to 0.1 dB.
std::vector<double> detect_crossovers(const WeightedCDF& a, const WeightedCDF& b);

// Cross-overs are searched over every pair drawn from the freespace pattern
// (named "freespace") and the candidates.
ComparisonReport compare_models(const Pattern& free,
                                const std::vector<std::pair<std::string, Pattern>>& candidates,
                                const RoIMask& roi, const WeightField& w);

}  // namespace mmwblock
