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

#include "mmwblock/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>

#include "mmwblock/errors.hpp"

namespace mmwblock {

double GaussianFit::cdf(double x) const {
  if (sigma <= 0.0) return x >= mu ? 1.0 : 0.0;
  return 0.5 * std::erfc(-(x - mu) / (sigma * std::sqrt(2.0)));
}

Pattern loss_field(const Pattern& free, const Pattern& blocked) {
  require_same_grid(free.grid(), blocked.grid(), "loss_field");
  if (free.kind() != PatternKind::eirp || blocked.kind() != PatternKind::eirp) {
    throw DataError("loss_field expects two EIRP patterns");
  }
  std::vector<double> loss(free.grid().size(), 0.0);
  for (std::size_t idx : free.grid().valid_points()) loss[idx] = free[idx] - blocked[idx];
  return Pattern(free.grid(), std::move(loss), PatternKind::loss);
}

LossStats loss_stats(const Pattern& loss, const PointMask& region, const WeightField& w) {
  require_same_grid(loss.grid(), region.grid(), "loss_stats");
  require_same_grid(loss.grid(), w.grid(), "loss_stats");
  std::vector<std::pair<double, double>> samples;
  for (std::size_t idx : loss.grid().valid_points()) {
    if (region.contains(idx)) samples.emplace_back(loss[idx], w[idx]);
  }
  if (samples.empty()) throw DataError("loss_stats: RoI is empty");

  // Offsets from the first sample keep constant fields exact.
  const double ref = samples.front().first;
  double total = 0.0;
  double first = 0.0;
  for (const auto& [x, wt] : samples) {
    total += wt;
    first += wt * (x - ref);
  }
  const double mean = ref + first / total;
  double second = 0.0;
  for (const auto& [x, wt] : samples) second += wt * (x - mean) * (x - mean);

  std::sort(samples.begin(), samples.end());
  double running = 0.0;
  double median = samples.back().first;
  for (const auto& [x, wt] : samples) {
    running += wt;
    if (running / total >= 0.5) {
      median = x;
      break;
    }
  }

  LossStats out;
  out.mean = mean;
  out.median = median;
  out.std_dev = std::sqrt(std::max(second / total, 0.0));
  out.sphere_fraction = fraction_of_sphere(region, w);
  out.n_points = samples.size();
  return out;
}

LossStats loss_stats(const Pattern& loss, const RoIMask& roi, const WeightField& w) {
  return loss_stats(loss, roi.mask(), w);
}

GaussianFit gaussian_fit(const Pattern& loss, const PointMask& region, const WeightField& w) {
  const auto s = loss_stats(loss, region, w);
  GaussianFit fit;
  fit.mu = s.mean;
  fit.sigma = s.std_dev;
  return fit;
}

GaussianFit gaussian_fit(const Pattern& loss, const RoIMask& roi, const WeightField& w) {
  return gaussian_fit(loss, roi.mask(), w);
}

SummaryTable study_summary(const PatternSet& free, const PatternSet& blocked,
                           std::vector<double> thresholds_dbm, std::vector<double> percentiles,
                           const WeightField& w) {
  if (thresholds_dbm.empty() || percentiles.empty()) {
    throw ConfigError("study_summary needs at least one threshold and one percentile");
  }
  std::sort(thresholds_dbm.begin(), thresholds_dbm.end(), std::greater<>());
  thresholds_dbm.erase(std::unique(thresholds_dbm.begin(), thresholds_dbm.end()),
                       thresholds_dbm.end());
  std::sort(percentiles.begin(), percentiles.end(), std::greater<>());
  percentiles.erase(std::unique(percentiles.begin(), percentiles.end()), percentiles.end());

  const auto free_overlay = overlay_best_beam(free);
  const auto blocked_overlay = overlay_best_beam(blocked);
  const auto& g = free_overlay.pattern;
  const auto& gb = blocked_overlay.pattern;
  require_same_grid(g.grid(), gb.grid(), "study_summary");
  const auto free_cdf = weighted_cdf(g, w);
  const auto blocked_cdf = weighted_cdf(gb, w);

  SummaryTable out;
  for (double p : percentiles) {
    PercentileLossEntry e;
    e.percentile = p;
    e.free_dbm = percentile_value(free_cdf, p);
    e.blocked_dbm = percentile_value(blocked_cdf, p);
    e.loss_db = e.free_dbm - e.blocked_dbm;
    out.percentile_losses.push_back(e);
  }
  auto [lo, hi] = std::minmax_element(
      out.percentile_losses.begin(), out.percentile_losses.end(),
      [](const auto& a, const auto& b) { return a.loss_db < b.loss_db; });
  out.gross_loss_min = lo->loss_db;
  out.gross_loss_max = hi->loss_db;

  auto widen = [](std::optional<double>& mn, std::optional<double>& mx, double v) {
    mn = mn ? std::min(*mn, v) : v;
    mx = mx ? std::max(*mx, v) : v;
  };
  for (double t : thresholds_dbm) {
    ThresholdEntry e;
    e.threshold_dbm = t;
    e.lost = coverage_lost(g, gb, w, t);
    e.improvement = roi_improvement(matched_r1_for_r5(g, t), roi_r5(g, gb, t), w);
    if (e.lost.rel) widen(out.rel_lost_min, out.rel_lost_max, *e.lost.rel);
    if (e.improvement.rel) widen(out.improvement_min, out.improvement_max, *e.improvement.rel);
    out.thresholds.push_back(e);
  }
  return out;
}

}  // namespace mmwblock
