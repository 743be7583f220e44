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

#include "mmwblock/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "mmwblock/errors.hpp"

namespace mmwblock {
namespace {

// Slack on the percentile inequality so that masses like 1 - 0.2 compare
// equal to 0.8.
constexpr double kMassTol = 1e-12;

}  // namespace

OverlayPattern overlay_best_beam(const PatternSet& set) {
  require_common_grid(set, "overlay_best_beam");
  const auto& grid = set.front().grid();
  std::vector<double> best(grid.size(), 0.0);
  std::vector<int> index(grid.size(), -1);
  for (std::size_t idx : grid.valid_points()) {
    int arg = 0;
    double v = set[0][idx];
    for (std::size_t b = 1; b < set.size(); ++b) {
      if (set[b][idx] > v) {
        v = set[b][idx];
        arg = static_cast<int>(b);
      }
    }
    best[idx] = v;
    index[idx] = arg;
  }
  return {Pattern(grid, std::move(best), set.front().kind()), std::move(index)};
}

WeightedCDF::WeightedCDF(std::vector<double> values, std::vector<double> cumulative)
    : values_(std::move(values)), cumulative_(std::move(cumulative)) {
  if (values_.empty() || values_.size() != cumulative_.size()) {
    throw DataError("CDF needs matching, nonempty value and weight arrays");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i > 0 && !(values_[i] > values_[i - 1])) throw DataError("CDF values must ascend");
    if (i > 0 && cumulative_[i] < cumulative_[i - 1]) throw DataError("CDF must be monotone");
    if (cumulative_[i] < 0.0 || cumulative_[i] > 1.0 + 1e-12) {
      throw DataError("CDF mass outside [0, 1]");
    }
  }
  if (std::abs(cumulative_.back() - 1.0) > 1e-12) throw DataError("CDF total mass is not 1");
}

double WeightedCDF::at(double x) const {
  const auto j = std::upper_bound(values_.begin(), values_.end(), x) - values_.begin();
  return j == 0 ? 0.0 : cumulative_[static_cast<std::size_t>(j - 1)];
}

double WeightedCDF::before(double x) const {
  const auto j = std::lower_bound(values_.begin(), values_.end(), x) - values_.begin();
  return j == 0 ? 0.0 : cumulative_[static_cast<std::size_t>(j - 1)];
}

WeightedCDF make_cdf(std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) throw DataError("cannot build a CDF from zero samples");
  std::sort(samples.begin(), samples.end());
  double total = 0.0;
  for (const auto& s : samples) total += s.second;
  if (!(total > 0.0)) throw DataError("CDF samples carry zero weight");
  std::vector<double> values;
  std::vector<double> cum;
  double running = 0.0;
  for (const auto& [v, w] : samples) {
    running += w;
    if (!values.empty() && values.back() == v) {
      cum.back() = running / total;
    } else {
      values.push_back(v);
      cum.push_back(running / total);
    }
  }
  cum.back() = 1.0;
  return WeightedCDF(std::move(values), std::move(cum));
}

WeightedCDF weighted_cdf(const Pattern& p, const WeightField& w) {
  return weighted_cdf(p, w, PointMask(p.grid(), true));
}

WeightedCDF weighted_cdf(const Pattern& p, const WeightField& w, const PointMask& region) {
  require_same_grid(p.grid(), w.grid(), "weighted_cdf");
  require_same_grid(p.grid(), region.grid(), "weighted_cdf");
  std::vector<std::pair<double, double>> samples;
  for (std::size_t idx : p.grid().valid_points()) {
    if (region.contains(idx)) samples.emplace_back(p[idx], w[idx]);
  }
  if (samples.empty()) throw DataError("weighted_cdf: region is empty");
  return make_cdf(std::move(samples));
}

double coverage_above(const Pattern& p, const WeightField& w, double threshold) {
  require_same_grid(p.grid(), w.grid(), "coverage_above");
  double above = 0.0;
  for (std::size_t idx : p.grid().valid_points()) {
    if (p[idx] >= threshold) above += w[idx];
  }
  return 100.0 * above;
}

double percentile_value(const WeightedCDF& cdf, double p) {
  if (!(p > 0.0 && p < 100.0)) throw ConfigError(fmt::format("percentile {} not in (0, 100)", p));
  // Largest i with 1 - F(v_i-) >= p/100, i.e. cum[i-1] <= 1 - p/100.
  const double limit = 1.0 - p / 100.0 + kMassTol;
  const auto& cum = cdf.cumulative();
  auto j = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), limit) - cum.begin());
  j = std::min(j, cdf.size() - 1);
  return cdf.values()[j];
}

double percentile_loss(const WeightedCDF& free_cdf, const WeightedCDF& blocked_cdf, double p) {
  return percentile_value(free_cdf, p) - percentile_value(blocked_cdf, p);
}

CoverageLost coverage_lost(double free_pct, double blocked_pct) {
  CoverageLost out;
  out.free_pct = free_pct;
  out.blocked_pct = blocked_pct;
  out.abs = free_pct - blocked_pct;
  if (free_pct > 0.0) out.rel = 100.0 * out.abs / free_pct;
  return out;
}

CoverageLost coverage_lost(const Pattern& free, const Pattern& blocked, const WeightField& w,
                           double threshold) {
  require_same_grid(free.grid(), blocked.grid(), "coverage_lost");
  return coverage_lost(coverage_above(free, w, threshold), coverage_above(blocked, w, threshold));
}

}  // namespace mmwblock
