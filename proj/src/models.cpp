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

#include "mmwblock/models.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mmwblock/errors.hpp"

namespace mmwblock {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::flat_region: return "flat_region";
    case ModelKind::constant_loss: return "constant_loss";
    case ModelKind::measured_mask: return "measured_mask";
  }
  return "?";
}

BlockageModel BlockageModel::flat_region(AngularRegion region, double loss_db) {
  BlockageModel m;
  m.kind = ModelKind::flat_region;
  m.loss_db = loss_db;
  m.region = region;
  return m;
}

BlockageModel BlockageModel::constant_loss(double loss_db) {
  BlockageModel m;
  m.kind = ModelKind::constant_loss;
  m.loss_db = loss_db;
  return m;
}

BlockageModel BlockageModel::measured_mask(Pattern loss) {
  BlockageModel m;
  m.kind = ModelKind::measured_mask;
  m.loss_pattern = std::move(loss);
  return m;
}

BlockageModel model_preset(std::string_view name, std::optional<AngularRegion> region) {
  if (name == "3gpp-flat-30") {
    if (!region) throw ConfigError("preset 3gpp-flat-30 needs a blockage region");
    return BlockageModel::flat_region(*region, 30.0);
  }
  if (name == "prior-hand-15.3") return BlockageModel::constant_loss(15.3);
  if (name == "prior-body-8.5") return BlockageModel::constant_loss(8.5);
  throw ConfigError(fmt::format("unknown model preset '{}'", name));
}

std::vector<std::string> model_preset_names() {
  return {"3gpp-flat-30", "prior-hand-15.3", "prior-body-8.5"};
}

Pattern apply_model(const Pattern& free, const BlockageModel& model) {
  const auto& grid = free.grid();
  std::vector<double> out(free.values().begin(), free.values().end());
  switch (model.kind) {
    case ModelKind::constant_loss:
      if (!std::isfinite(model.loss_db)) throw ConfigError("model loss must be finite");
      for (std::size_t idx : grid.valid_points()) out[idx] -= model.loss_db;
      break;
    case ModelKind::flat_region: {
      if (!model.region) throw ConfigError("flat_region model has no region");
      if (!std::isfinite(model.loss_db)) throw ConfigError("model loss must be finite");
      model.region->validate();
      bool touches = false;
      for (std::size_t idx : grid.valid_points()) {
        if (model.region->contains(grid.phi_at(idx), grid.theta_at(idx))) {
          out[idx] -= model.loss_db;
          touches = true;
        }
      }
      if (!touches) throw ConfigError("flat_region model region lies outside the grid");
      break;
    }
    case ModelKind::measured_mask: {
      if (!model.loss_pattern) throw ConfigError("measured_mask model has no loss pattern");
      require_same_grid(grid, model.loss_pattern->grid(), "apply_model");
      for (std::size_t idx : grid.valid_points()) out[idx] -= (*model.loss_pattern)[idx];
      break;
    }
  }
  return Pattern(grid, std::move(out), free.kind());
}

std::vector<double> detect_crossovers(const WeightedCDF& a, const WeightedCDF& b) {
  std::vector<double> merged(a.values());
  merged.insert(merged.end(), b.values().begin(), b.values().end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  std::vector<double> out;
  int last_sign = 0;
  for (double v : merged) {
    const double d = a.at(v) - b.at(v);
    const int sign = d > 1e-12 ? 1 : (d < -1e-12 ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) out.push_back(std::round(v * 10.0) / 10.0);
    last_sign = sign;
  }
  return out;
}

ComparisonReport compare_models(const Pattern& free,
                                const std::vector<std::pair<std::string, Pattern>>& candidates,
                                const RoIMask& roi, const WeightField& w) {
  if (roi.count() == 0) throw DataError("compare_models: RoI is empty");
  ComparisonReport report{weighted_cdf(free, w, roi.mask()), {}, {}};
  for (const auto& [name, pattern] : candidates) {
    require_same_grid(free.grid(), pattern.grid(), "compare_models");
    CandidateReport c{name, weighted_cdf(pattern, w, roi.mask()), {}};
    for (double p : kComparePercentiles) {
      PercentileDelta d;
      d.percentile = p;
      d.free_dbm = percentile_value(report.free_cdf, p);
      d.candidate_dbm = percentile_value(c.cdf, p);
      d.delta_db = d.free_dbm - d.candidate_dbm;
      c.deltas.push_back(d);
    }
    report.candidates.push_back(std::move(c));
  }

  std::vector<std::pair<std::string, const WeightedCDF*>> series;
  series.emplace_back("freespace", &report.free_cdf);
  for (const auto& c : report.candidates) series.emplace_back(c.name, &c.cdf);
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j) {
      auto at = detect_crossovers(*series[i].second, *series[j].second);
      if (!at.empty()) report.crossovers.push_back({series[i].first, series[j].first, std::move(at)});
    }
  }
  return report;
}

}  // namespace mmwblock
