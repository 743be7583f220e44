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

#include "mmwblock/report.hpp"

#include <cmath>
#include <fstream>
#include <optional>

#include <fmt/format.h>

#include "mmwblock/analysis.hpp"
#include "mmwblock/errors.hpp"
#include "mmwblock/roi.hpp"
#include "mmwblock/stats.hpp"
#include "mmwblock/svg.hpp"
#include "mmwblock/synth.hpp"

namespace mmwblock {
namespace {

using nlohmann::json;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string cell(const std::optional<double>& v, int digits = 1) {
  return v ? fmt::format("{:.{}f}", *v, digits) : std::string("n/a");
}

std::string range_text(const std::optional<double>& lo, const std::optional<double>& hi,
                       const char* unit) {
  if (!lo || !hi) return "n/a";
  return fmt::format("{:.1f}{} to {:.1f}{}", *lo, unit, *hi, unit);
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out + '\n';
}

std::optional<LossStats> maybe_stats(const Pattern& loss, const RoIMask& roi, const WeightField& w) {
  if (roi.count() == 0) return std::nullopt;
  return loss_stats(loss, roi, w);
}

std::vector<std::pair<double, double>> curve(const WeightedCDF& cdf) {
  return svg::step_points(cdf.values(), cdf.cumulative());
}

}  // namespace

json stats_json(const std::optional<LossStats>& s) {
  if (!s) return nullptr;
  return {{"mean_db", s->mean},
          {"median_db", s->median},
          {"std_db", s->std_dev},
          {"sphere_pct", s->sphere_fraction},
          {"n_points", s->n_points}};
}

json roi_params_json(const RoIMask& roi) {
  const auto& p = roi.params();
  json j = {{"kind", std::string(to_string(roi.kind()))}, {"g_max_dbm", p.g_max}};
  if (p.delta1) j["delta1_db"] = *p.delta1;
  if (p.delta2) j["delta2_db"] = *p.delta2;
  if (p.delta3) j["delta3_db"] = *p.delta3;
  if (p.delta4) j["delta4_dbm"] = *p.delta4;
  if (p.delta5) j["delta5_dbm"] = *p.delta5;
  if (p.g_max_blocked) j["g_max_blocked_dbm"] = *p.g_max_blocked;
  if (p.empty_flag) j["empty"] = true;
  return j;
}

json conventions_json() {
  return {{"percentile", std::string(kPercentileConvention)},
          {"threshold_comparison", "value >= threshold"},
          {"roi_improvement", std::string(kImprovementConvention)},
          {"coverage_lost_rel", "rel = 100 * (free% - blocked%) / free%"},
          {"stats_weighting", std::string(kStatsWeighting)},
          {"median", "smallest value whose cumulative RoI weight reaches 0.5"},
          {"sphere_denominator", "valid (scanned) grid points only"},
          {"floor_dbm", kFloorDb},
          {"fit_family", "gaussian"}};
}

StudyInput study_from_scenario(const Scenario& s) {
  const auto grid = s.grid.build();
  StudyInput in;
  in.name = s.name;
  in.study_id = s.study_id;
  in.subarray = s.subarray;
  in.orientation = s.orientation;
  in.grip = s.grip;
  in.free = synth_pattern_set(s.array, s.beams, grid);
  in.blocked = apply_blockage_mask(in.free, s.blockage);
  in.analysis = s.analysis;
  for (const auto& m : s.models) in.models.emplace_back(m.preset, model_preset(m.preset, m.region));
  in.source = to_json(s);
  return in;
}

std::vector<std::string> summary_header() {
  return {"study",
          "subarray_type",
          "ue_orientation",
          "hand_grip",
          "gross_loss_estimate_db",
          "relative_sphere_lost_pct",
          "relative_roi_improvement_pct"};
}

StudyResult analyze_study(const StudyInput& in) {
  require_common_grid(in.free, "analyze_study");
  require_common_grid(in.blocked, "analyze_study");
  const auto& p = in.analysis;
  const auto free_overlay = overlay_best_beam(in.free);
  const auto blocked_overlay = overlay_best_beam(in.blocked);
  const auto& g = free_overlay.pattern;
  const auto& gb = blocked_overlay.pattern;
  const auto& grid = g.grid();
  const auto w = solid_angle_weights(grid);
  const auto uw = uniform_weights(grid);
  const auto loss = loss_field(g, gb);

  StudyResult out;
  json& j = out.json;
  j["name"] = in.name;
  j["study_id"] = in.study_id;
  j["subarray"] = in.subarray;
  j["orientation"] = in.orientation;
  j["grip"] = in.grip;
  j["source"] = in.source;
  j["conventions"] = conventions_json();
  j["parameters"] = {{"thresholds_dbm", p.thresholds_dbm}, {"percentiles", p.percentiles},
                     {"delta1_db", p.delta1},          {"delta2_db", p.delta2},
                     {"delta3_db", p.delta3},          {"delta4_dbm", p.delta4},
                     {"delta5_dbm", p.delta5}};
  j["grid"] = {{"phi_count", grid.phi_count()},
               {"theta_count", grid.theta_count()},
               {"valid_points", grid.valid_count()},
               {"phi_step_deg", grid.phi_step()},
               {"theta_step_deg", grid.theta_step()}};
  j["peaks"] = {{"freespace_dbm", g.max()}, {"blocked_dbm", gb.max()}};

  // Summary row, coverage and percentile tables.
  const auto summary = study_summary(in.free, in.blocked, p.thresholds_dbm, p.percentiles, w);
  json cov = json::array();
  std::string coverage_csv =
      csv_line({"threshold_dbm", "freespace_pct", "blocked_pct", "abs_lost_pct", "rel_lost_pct"});
  for (const auto& t : summary.thresholds) {
    cov.push_back({{"threshold_dbm", t.threshold_dbm},
                   {"freespace_pct", t.lost.free_pct},
                   {"blocked_pct", t.lost.blocked_pct},
                   {"abs_lost_pct", t.lost.abs},
                   {"rel_lost_pct", opt(t.lost.rel)}});
    coverage_csv += csv_line({fmt::format("{:g}", t.threshold_dbm),
                              fmt::format("{:.1f}", t.lost.free_pct),
                              fmt::format("{:.1f}", t.lost.blocked_pct),
                              fmt::format("{:.1f}", t.lost.abs), cell(t.lost.rel)});
  }
  json pct = json::array();
  std::string percentile_csv = csv_line({"percentile", "freespace_dbm", "blocked_dbm", "loss_db"});
  for (const auto& e : summary.percentile_losses) {
    pct.push_back({{"percentile", e.percentile},
                   {"freespace_dbm", e.free_dbm},
                   {"blocked_dbm", e.blocked_dbm},
                   {"loss_db", e.loss_db}});
    percentile_csv += csv_line({fmt::format("{:g}", e.percentile), fmt::format("{:.1f}", e.free_dbm),
                                fmt::format("{:.1f}", e.blocked_dbm),
                                fmt::format("{:.1f}", e.loss_db)});
  }
  j["coverage_lost"] = cov;
  j["percentile_loss"] = pct;
  j["summary"] = {{"gross_loss_min_db", summary.gross_loss_min},
                  {"gross_loss_max_db", summary.gross_loss_max},
                  {"rel_lost_min_pct", opt(summary.rel_lost_min)},
                  {"rel_lost_max_pct", opt(summary.rel_lost_max)},
                  {"improvement_min_pct", opt(summary.improvement_min)},
                  {"improvement_max_pct", opt(summary.improvement_max)}};
  out.summary_row = {std::to_string(in.study_id),
                     in.subarray,
                     in.orientation,
                     in.grip,
                     range_text(summary.gross_loss_min, summary.gross_loss_max, ""),
                     range_text(summary.rel_lost_min, summary.rel_lost_max, "%"),
                     range_text(summary.improvement_min, summary.improvement_max, "%")};

  // Loss statistics per RoI definition.
  std::vector<std::pair<std::string, RoIMask>> rois;
  rois.emplace_back(fmt::format("R1 delta1={:g}dB", p.delta1), roi_r1(g, p.delta1));
  rois.emplace_back(fmt::format("R2 delta1={:g}dB delta2={:g}dB", p.delta1, p.delta2),
                    roi_r2(g, gb, p.delta1, p.delta2));
  rois.emplace_back(fmt::format("R3 delta1={:g}dB delta3={:g}dB", p.delta1, p.delta3),
                    roi_r3(g, gb, p.delta1, p.delta3));
  rois.emplace_back(fmt::format("R4 delta1={:g}dB delta4={:g}dBm", p.delta1, p.delta4),
                    roi_r4(g, gb, p.delta1, p.delta4));
  rois.emplace_back(fmt::format("R5 delta5={:g}dBm", p.delta5), roi_r5(g, gb, p.delta5));
  json roi_rows = json::array();
  std::string roi_csv =
      csv_line({"criterion", "mean_db", "median_db", "std_db", "sphere_pct", "unweighted_mean_db",
                "unweighted_median_db", "unweighted_std_db"});
  for (const auto& [label, roi] : rois) {
    const auto s = maybe_stats(loss, roi, w);
    const auto u = maybe_stats(loss, roi, uw);
    roi_rows.push_back({{"criterion", label},
                        {"params", roi_params_json(roi)},
                        {"weighted", stats_json(s)},
                        {"unweighted", stats_json(u)}});
    roi_csv += csv_line({label, cell(s ? std::optional(s->mean) : std::nullopt),
                         cell(s ? std::optional(s->median) : std::nullopt),
                         cell(s ? std::optional(s->std_dev) : std::nullopt),
                         fmt::format("{:.1f}", fraction_of_sphere(roi.mask(), w)),
                         cell(u ? std::optional(u->mean) : std::nullopt),
                         cell(u ? std::optional(u->median) : std::nullopt),
                         cell(u ? std::optional(u->std_dev) : std::nullopt)});
  }
  j["roi_table"] = roi_rows;

  json h2h = json::array();
  std::string h2h_csv = csv_line({"threshold_dbm", "r1_mean_db", "r1_median_db", "r1_std_db",
                                  "r1_sphere_pct", "r5_mean_db", "r5_median_db", "r5_std_db",
                                  "r5_sphere_pct", "improvement_abs_pct", "improvement_rel_pct"});
  for (const auto& t : summary.thresholds) {
    const auto base = matched_r1_for_r5(g, t.threshold_dbm);
    const auto enhanced = roi_r5(g, gb, t.threshold_dbm);
    const auto sb = maybe_stats(loss, base, w);
    const auto se = maybe_stats(loss, enhanced, w);
    h2h.push_back({{"threshold_dbm", t.threshold_dbm},
                   {"r1", stats_json(sb)},
                   {"r1_params", roi_params_json(base)},
                   {"r5", stats_json(se)},
                   {"improvement_abs_pct", t.improvement.abs},
                   {"improvement_rel_pct", opt(t.improvement.rel)}});
    auto f = [&](const std::optional<LossStats>& s, double LossStats::*m) {
      return cell(s ? std::optional(s.value().*m) : std::nullopt);
    };
    h2h_csv += csv_line({fmt::format("{:g}", t.threshold_dbm), f(sb, &LossStats::mean),
                         f(sb, &LossStats::median), f(sb, &LossStats::std_dev),
                         fmt::format("{:.1f}", t.improvement.base_pct), f(se, &LossStats::mean),
                         f(se, &LossStats::median), f(se, &LossStats::std_dev),
                         fmt::format("{:.1f}", t.improvement.enhanced_pct),
                         fmt::format("{:.1f}", t.improvement.abs), cell(t.improvement.rel)});
  }
  j["roi_head_to_head"] = h2h;

  // Loss statistics over R5 with a Gaussian fit.
  const auto r5 = roi_r5(g, gb, p.delta5);
  std::optional<LossStats> r5_stats = maybe_stats(loss, r5, w);
  json loss_json = {{"delta5_dbm", p.delta5}, {"weighted", stats_json(r5_stats)},
                    {"unweighted", stats_json(maybe_stats(loss, r5, uw))}};
  std::vector<svg::Series> loss_series;
  if (r5_stats) {
    const auto fit = gaussian_fit(loss, r5, w);
    loss_json["fit"] = {{"family", fit.family}, {"mu_db", fit.mu}, {"sigma_db", fit.sigma}};
    const auto cdf = weighted_cdf(loss, w, r5.mask());
    loss_series.push_back({"empirical loss", curve(cdf), kPalette[0], false});
    std::vector<std::pair<double, double>> fitted;
    const double lo = cdf.values().front();
    const double hi = cdf.values().back();
    for (int k = 0; k <= 200; ++k) {
      const double x = lo + (hi - lo) * k / 200.0;
      fitted.emplace_back(x, fit.cdf(x));
    }
    loss_series.push_back({fmt::format("Gaussian fit ({:.1f}, {:.1f})", fit.mu, fit.sigma), fitted,
                           kPalette[1], true});
  } else {
    loss_json["fit"] = nullptr;
  }
  j["loss_stats"] = loss_json;

  // Model comparison over R5.
  if (!in.models.empty() && r5.count() > 0) {
    std::vector<std::pair<std::string, Pattern>> candidates;
    candidates.emplace_back("true_hand", gb);
    for (const auto& [name, model] : in.models) candidates.emplace_back(name, apply_model(g, model));
    const auto cmp = compare_models(g, candidates, r5, w);
    json cj = {{"roi", roi_params_json(r5)}, {"candidates", json::array()},
               {"crossovers", json::array()}};
    std::vector<svg::Series> series{{"freespace", curve(cmp.free_cdf), kPalette[0], false}};
    std::size_t colour = 1;
    for (const auto& c : cmp.candidates) {
      json deltas = json::array();
      for (const auto& d : c.deltas) {
        deltas.push_back({{"percentile", d.percentile},
                          {"freespace_dbm", d.free_dbm},
                          {"candidate_dbm", d.candidate_dbm},
                          {"delta_db", d.delta_db}});
      }
      cj["candidates"].push_back({{"name", c.name}, {"percentile_deltas", deltas}});
      series.push_back({c.name, curve(c.cdf), kPalette[colour++ % std::size(kPalette)],
                        c.name != "true_hand"});
    }
    for (const auto& x : cmp.crossovers) {
      cj["crossovers"].push_back({{"first", x.first}, {"second", x.second}, {"eirp_dbm", x.eirp_dbm}});
    }
    j["model_comparison"] = cj;
    out.files[in.name + "_models.svg"] =
        svg::line_chart(fmt::format("{}: EIRP over R5 with blockage models", in.name), "EIRP (dBm)",
                        "CDF", series);
  } else {
    j["model_comparison"] = nullptr;
  }

  // Plots.
  const double vmax = std::ceil(g.max());
  out.files[in.name + "_overlay_freespace.svg"] =
      svg::heatmap(g, fmt::format("{}: best-beam EIRP, freespace", in.name), vmax - 40.0, vmax);
  out.files[in.name + "_overlay_blocked.svg"] =
      svg::heatmap(gb, fmt::format("{}: best-beam EIRP, blocked", in.name), vmax - 40.0, vmax);
  out.files[in.name + "_cdf.svg"] = svg::line_chart(
      fmt::format("{}: EIRP over the sphere (sin-theta weighted)", in.name), "EIRP (dBm)", "CDF",
      {{"freespace", curve(weighted_cdf(g, w)), kPalette[0], false},
       {"blocked", curve(weighted_cdf(gb, w)), kPalette[1], false}});
  if (!loss_series.empty()) {
    out.files[in.name + "_loss_cdf.svg"] = svg::line_chart(
        fmt::format("{}: blockage loss over R5", in.name), "Loss (dB)", "CDF", loss_series, 5.0);
  }
  out.files[in.name + "_coverage.csv"] = coverage_csv;
  out.files[in.name + "_percentiles.csv"] = percentile_csv;
  out.files[in.name + "_roi.csv"] = roi_csv;
  out.files[in.name + "_roi_head_to_head.csv"] = h2h_csv;
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  out << contents;
}

void write_report_bundle(const std::vector<StudyInput>& studies,
                         const std::filesystem::path& out_dir) {
  if (studies.empty()) throw ConfigError("report needs at least one study");
  std::filesystem::create_directories(out_dir);
  std::string csv = csv_line(summary_header());
  json all = {{"conventions", conventions_json()}, {"columns", summary_header()},
              {"studies", json::array()}};
  for (const auto& s : studies) {
    auto r = analyze_study(s);
    csv += csv_line(r.summary_row);
    all["studies"].push_back(r.json);
    for (const auto& [name, contents] : r.files) write_text_file(out_dir / name, contents);
  }
  write_text_file(out_dir / "summary.csv", csv);
  write_text_file(out_dir / "summary.json", all.dump(2) + "\n");
}

}  // namespace mmwblock
