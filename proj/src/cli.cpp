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

#include "mmwblock/cli.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "mmwblock/analysis.hpp"
#include "mmwblock/errors.hpp"
#include "mmwblock/models.hpp"
#include "mmwblock/report.hpp"
#include "mmwblock/roi.hpp"
#include "mmwblock/scan_io.hpp"
#include "mmwblock/scenario.hpp"
#include "mmwblock/stats.hpp"
#include "mmwblock/svg.hpp"
#include "mmwblock/synth.hpp"

namespace mmwblock {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::vector<std::string> scenarios;
  std::string scan;
  std::string out;
  std::vector<double> thresholds;
  std::vector<double> percentiles;
  std::string roi_kind = "r5";
  double delta[5] = {};
  CLI::Option* delta_opt[5] = {};
  std::vector<std::string> models;
  std::string flat_region;
  std::string blocked_mode = "true_hand";
  std::string link_budget;
  bool verbose = false;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    double x = 0.0;
    const auto* first = text.data() + pos;
    const auto* last = text.data() + comma;
    const auto r = std::from_chars(first, last, x);
    if (r.ec != std::errc() || r.ptr != last) {
      throw ConfigError(fmt::format("{}: cannot parse '{}'", what, text));
    }
    v.push_back(x);
    pos = comma + 1;
  }
  if (v.size() != expected) {
    throw ConfigError(fmt::format("{}: expected {} comma-separated numbers", what, expected));
  }
  return v;
}

std::optional<AngularRegion> flat_region(const Options& o) {
  if (o.flat_region.empty()) return std::nullopt;
  const auto v = parse_numbers(o.flat_region, 4, "--flat-region");
  AngularRegion r{v[0], v[1], v[2], v[3]};
  r.validate();
  return r;
}

bool scenario_input(const Options& o) { return !o.scenarios.empty(); }

// Loads freespace/blocked patterns plus analysis parameters, then applies
// flag overrides.
StudyInput load_input(const Options& o, bool need_blocked) {
  if (o.scenarios.empty() == o.scan.empty()) {
    throw ConfigError("exactly one of --scenario or --scan is required");
  }
  StudyInput in;
  if (scenario_input(o)) {
    if (o.scenarios.size() != 1) throw ConfigError("this command takes a single --scenario");
    in = study_from_scenario(load_scenario(o.scenarios.front()));
  } else {
    auto data = parse_scan_csv(fs::path(o.scan));
    const auto blocked_mode = parse_scan_mode(o.blocked_mode);
    in.name = fs::path(o.scan).stem().string();
    in.free = data.mode(ScanMode::freespace);
    if (data.has(blocked_mode)) {
      in.blocked = data.mode(blocked_mode);
    } else if (need_blocked) {
      throw DataError(fmt::format("{}: no '{}' records", o.scan, o.blocked_mode));
    }
    in.source = {{"scan", o.scan}, {"blocked_mode", o.blocked_mode}};
    if (!o.link_budget.empty()) {
      const auto v = parse_numbers(o.link_budget, 3, "--link-budget");
      const LinkBudget lb{v[0], v[1], v[2]};
      lb.validate();
      in.free = calibrate(in.free, lb);
      if (!in.blocked.empty()) in.blocked = calibrate(in.blocked, lb);
      in.source["link_budget"] = {
          {"g_rx_dbi", lb.g_rx_dbi}, {"path_loss_db", lb.path_loss_db}, {"cable_loss_db", lb.cable_loss_db}};
    }
  }
  if (!o.link_budget.empty() && scenario_input(o)) {
    throw ConfigError("--link-budget applies to --scan input only");
  }
  auto& a = in.analysis;
  if (!o.thresholds.empty()) a.thresholds_dbm = o.thresholds;
  if (!o.percentiles.empty()) a.percentiles = o.percentiles;
  double* deltas[5] = {&a.delta1, &a.delta2, &a.delta3, &a.delta4, &a.delta5};
  for (int k = 0; k < 5; ++k) {
    if (o.delta_opt[k]->count() > 0) *deltas[k] = o.delta[k];
  }
  if (!o.models.empty()) {
    in.models.clear();
    const auto region = flat_region(o);
    for (const auto& m : o.models) in.models.emplace_back(m, model_preset(m, region));
  }
  if (need_blocked && in.blocked.empty()) throw DataError("no blocked patterns available");
  return in;
}

json analysis_json(const AnalysisParams& a) {
  return {{"thresholds_dbm", a.thresholds_dbm}, {"percentiles", a.percentiles},
          {"delta1_db", a.delta1},              {"delta2_db", a.delta2},
          {"delta3_db", a.delta3},              {"delta4_dbm", a.delta4},
          {"delta5_dbm", a.delta5}};
}

json metadata(const StudyInput& in, const std::string& command) {
  return {{"command", command},
          {"study", in.name},
          {"source", in.source},
          {"parameters", analysis_json(in.analysis)},
          {"conventions", conventions_json()}};
}

RoIMask build_roi(const Options& o, const StudyInput& in, const Pattern& g, const Pattern& gb) {
  const auto& a = in.analysis;
  switch (parse_roi_kind(o.roi_kind)) {
    case RoiKind::r1: return roi_r1(g, a.delta1);
    case RoiKind::r2: return roi_r2(g, gb, a.delta1, a.delta2);
    case RoiKind::r3: return roi_r3(g, gb, a.delta1, a.delta3);
    case RoiKind::r4: return roi_r4(g, gb, a.delta1, a.delta4);
    case RoiKind::r5: break;
  }
  return roi_r5(g, gb, a.delta5);
}

std::string prefixed(const StudyInput& in, const char* suffix) { return in.name + "_" + suffix; }

void write_json(const fs::path& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

void cmd_synth(const Options& o, std::ostream& log) {
  if (o.scenarios.size() != 1 || !o.scan.empty()) {
    throw ConfigError("synth needs exactly one --scenario");
  }
  const auto sc = load_scenario(o.scenarios.front());
  const auto in = study_from_scenario(sc);
  std::map<ScanMode, PatternSet> modes{{ScanMode::freespace, in.free},
                                       {ScanMode::true_hand, in.blocked}};
  const fs::path out(o.out);
  write_scan_csv(out / prefixed(in, "scan.csv"), modes);
  json beams = json::array();
  for (std::size_t b = 0; b < sc.beams.size(); ++b) {
    beams.push_back({{"beam_id", b},
                     {"scan_deg", sc.beams[b].scan_angle_deg},
                     {"phases_deg", steering_phases_deg(sc.array, sc.beams[b])},
                     {"scan_plane_hpbw_deg", scan_plane_beamwidth_deg(sc.array, sc.beams[b])},
                     {"peak_eirp_dbm", in.free[b].max()},
                     {"floored_points", in.free[b].floored_count()}});
  }
  auto meta = metadata(in, "synth");
  meta["scenario"] = to_json(sc);
  meta["beams"] = beams;
  meta["scan_file"] = prefixed(in, "scan.csv");
  write_json(out / prefixed(in, "meta.json"), meta);
  log << fmt::format("synth: {} beams on {} points\n", sc.beams.size(),
                     in.free.front().grid().valid_count());
}

void cmd_overlay(const Options& o, std::ostream& log) {
  const auto in = load_input(o, false);
  const fs::path out(o.out);
  std::vector<std::pair<std::string, const PatternSet*>> sets{{"freespace", &in.free}};
  if (!in.blocked.empty()) sets.emplace_back("blocked", &in.blocked);
  json j = metadata(in, "overlay");
  for (const auto& [label, set] : sets) {
    const auto ov = overlay_best_beam(*set);
    const auto& grid = ov.pattern.grid();
    std::string csv = "phi,theta,best_beam,eirp_dbm\n";
    for (auto idx : grid.valid_points()) {
      csv += fmt::format("{:g},{:g},{},{:.6f}\n", grid.phi_at(idx), grid.theta_at(idx),
                         ov.best_beam[idx], ov.pattern[idx]);
    }
    const std::string stem = in.name + "_overlay_" + label;
    write_text_file(out / (stem + ".csv"), csv);
    const double vmax = std::ceil(ov.pattern.max());
    write_text_file(out / (stem + ".svg"),
                    svg::heatmap(ov.pattern, fmt::format("{}: best-beam EIRP, {}", in.name, label),
                                 vmax - 40.0, vmax));
    j["overlays"][label] = {{"peak_dbm", ov.pattern.max()}, {"min_dbm", ov.pattern.min()},
                            {"floored_points", ov.pattern.floored_count()}};
    log << fmt::format("overlay: {} peak {:.2f} dBm\n", label, ov.pattern.max());
  }
  write_json(out / prefixed(in, "overlay.json"), j);
}

void cmd_cdf(const Options& o, std::ostream& log) {
  const auto in = load_input(o, true);
  const auto g = overlay_best_beam(in.free).pattern;
  const auto gb = overlay_best_beam(in.blocked).pattern;
  const auto w = solid_angle_weights(g.grid());
  const auto cf = weighted_cdf(g, w);
  const auto cb = weighted_cdf(gb, w);
  std::string csv = "mode,eirp_dbm,cdf\n";
  for (const auto& [label, c] : {std::pair{"freespace", &cf}, std::pair{"blocked", &cb}}) {
    for (std::size_t k = 0; k < c->size(); ++k) {
      csv += fmt::format("{},{:.6f},{:.9f}\n", label, c->values()[k], c->cumulative()[k]);
    }
  }
  const fs::path out(o.out);
  write_text_file(out / prefixed(in, "cdf.csv"), csv);
  auto j = metadata(in, "cdf");
  j["coverage"] = json::array();
  for (double t : in.analysis.thresholds_dbm) {
    const auto c = coverage_lost(g, gb, w, t);
    j["coverage"].push_back({{"threshold_dbm", t},
                             {"freespace_pct", c.free_pct},
                             {"blocked_pct", c.blocked_pct},
                             {"abs_lost_pct", c.abs},
                             {"rel_lost_pct", c.rel ? json(*c.rel) : json(nullptr)}});
  }
  j["percentiles"] = json::array();
  for (double p : in.analysis.percentiles) {
    j["percentiles"].push_back({{"percentile", p},
                                {"freespace_dbm", percentile_value(cf, p)},
                                {"blocked_dbm", percentile_value(cb, p)},
                                {"loss_db", percentile_loss(cf, cb, p)}});
  }
  write_json(out / prefixed(in, "cdf.json"), j);
  write_text_file(out / prefixed(in, "cdf.svg"),
                  svg::line_chart(fmt::format("{}: EIRP over the sphere", in.name), "EIRP (dBm)",
                                  "CDF",
                                  {{"freespace", svg::step_points(cf.values(), cf.cumulative()),
                                    "#1f77b4", false},
                                   {"blocked", svg::step_points(cb.values(), cb.cumulative()),
                                    "#d62728", false}}));
  log << fmt::format("cdf: {} thresholds, {} percentiles\n", in.analysis.thresholds_dbm.size(),
                     in.analysis.percentiles.size());
}

void cmd_roi(const Options& o, std::ostream& log) {
  const auto kind = parse_roi_kind(o.roi_kind);
  const auto in = load_input(o, kind != RoiKind::r1);
  const auto g = overlay_best_beam(in.free).pattern;
  const auto gb = in.blocked.empty() ? g : overlay_best_beam(in.blocked).pattern;
  const auto roi = build_roi(o, in, g, gb);
  const auto w = solid_angle_weights(g.grid());
  const auto& grid = g.grid();
  std::string csv = "phi,theta,in_roi\n";
  for (auto idx : grid.valid_points()) {
    csv += fmt::format("{:g},{:g},{}\n", grid.phi_at(idx), grid.theta_at(idx),
                       roi.contains(idx) ? 1 : 0);
  }
  const fs::path out(o.out);
  write_text_file(out / prefixed(in, "roi_mask.csv"), csv);
  auto j = metadata(in, "roi");
  j["roi"] = roi_params_json(roi);
  j["points"] = roi.count();
  j["sphere_pct"] = fraction_of_sphere(roi.mask(), w);
  write_json(out / prefixed(in, "roi_coverage.json"), j);
  log << fmt::format("roi: {} covers {:.2f}% of the sphere\n", o.roi_kind,
                     fraction_of_sphere(roi.mask(), w));
}

void cmd_stats(const Options& o, std::ostream& log) {
  const auto in = load_input(o, true);
  const auto g = overlay_best_beam(in.free).pattern;
  const auto gb = overlay_best_beam(in.blocked).pattern;
  const auto roi = build_roi(o, in, g, gb);
  if (roi.count() == 0) throw DataError(fmt::format("region {} is empty", o.roi_kind));
  const auto loss = loss_field(g, gb);
  const auto w = solid_angle_weights(g.grid());
  const auto s = loss_stats(loss, roi, w);
  const auto fit = gaussian_fit(loss, roi, w);
  auto j = metadata(in, "stats");
  j["roi"] = roi_params_json(roi);
  j["weighted"] = stats_json(s);
  j["unweighted"] = stats_json(loss_stats(loss, roi, uniform_weights(g.grid())));
  j["fit"] = {{"family", fit.family}, {"mu_db", fit.mu}, {"sigma_db", fit.sigma}};
  const fs::path out(o.out);
  write_json(out / prefixed(in, "stats.json"), j);
  const auto cdf = weighted_cdf(loss, w, roi.mask());
  std::vector<std::pair<double, double>> fitted;
  const double lo = cdf.values().front();
  const double hi = cdf.values().back();
  for (int k = 0; k <= 200; ++k) {
    const double x = lo + (hi - lo) * k / 200.0;
    fitted.emplace_back(x, fit.cdf(x));
  }
  write_text_file(out / prefixed(in, "loss_cdf.svg"),
                  svg::line_chart(fmt::format("{}: blockage loss over {}", in.name, o.roi_kind),
                                  "Loss (dB)", "CDF",
                                  {{"empirical", svg::step_points(cdf.values(), cdf.cumulative()),
                                    "#1f77b4", false},
                                   {"Gaussian fit", fitted, "#d62728", true}},
                                  5.0));
  log << fmt::format("stats: mean {:.2f} dB, median {:.2f} dB, std {:.2f} dB\n", s.mean, s.median,
                     s.std_dev);
}

void cmd_compare(const Options& o, std::ostream& log) {
  const auto in = load_input(o, true);
  const auto g = overlay_best_beam(in.free).pattern;
  const auto gb = overlay_best_beam(in.blocked).pattern;
  const auto roi = build_roi(o, in, g, gb);
  if (roi.count() == 0) throw DataError(fmt::format("region {} is empty", o.roi_kind));
  std::vector<std::pair<std::string, Pattern>> candidates{{"true_hand", gb}};
  for (const auto& [name, model] : in.models) candidates.emplace_back(name, apply_model(g, model));
  const auto w = solid_angle_weights(g.grid());
  const auto cmp = compare_models(g, candidates, roi, w);
  auto j = metadata(in, "compare");
  j["roi"] = roi_params_json(roi);
  j["candidates"] = json::array();
  std::vector<svg::Series> series{
      {"freespace", svg::step_points(cmp.free_cdf.values(), cmp.free_cdf.cumulative()), "#1f77b4",
       false}};
  const char* colours[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::size_t k = 0;
  for (const auto& c : cmp.candidates) {
    json deltas = json::array();
    for (const auto& d : c.deltas) {
      deltas.push_back({{"percentile", d.percentile},
                        {"freespace_dbm", d.free_dbm},
                        {"candidate_dbm", d.candidate_dbm},
                        {"delta_db", d.delta_db}});
    }
    j["candidates"].push_back({{"name", c.name}, {"percentile_deltas", deltas}});
    series.push_back({c.name, svg::step_points(c.cdf.values(), c.cdf.cumulative()),
                      colours[k++ % std::size(colours)], c.name != "true_hand"});
  }
  j["crossovers"] = json::array();
  for (const auto& x : cmp.crossovers) {
    j["crossovers"].push_back({{"first", x.first}, {"second", x.second}, {"eirp_dbm", x.eirp_dbm}});
  }
  const fs::path out(o.out);
  write_json(out / prefixed(in, "compare.json"), j);
  write_text_file(out / prefixed(in, "compare.svg"),
                  svg::line_chart(fmt::format("{}: EIRP with blockage models", in.name),
                                  "EIRP (dBm)", "CDF", series));
  log << fmt::format("compare: {} candidates, {} crossing pairs\n", cmp.candidates.size(),
                     cmp.crossovers.size());
}

void cmd_report(const Options& o, std::ostream& log, std::ostream& out_stream) {
  std::vector<StudyInput> studies;
  if (!o.scenarios.empty()) {
    if (!o.scan.empty()) throw ConfigError("report takes --scenario or --scan, not both");
    for (const auto& path : o.scenarios) {
      Options single = o;
      single.scenarios = {path};
      studies.push_back(load_input(single, true));
    }
  } else {
    studies.push_back(load_input(o, true));
  }
  write_report_bundle(studies, o.out);
  std::ifstream summary(fs::path(o.out) / "summary.csv");
  out_stream << summary.rdbuf();
  log << fmt::format("report: {} studies written to {}\n", studies.size(), o.out);
}

void add_common(CLI::App* sub, Options& o, bool analysis) {
  sub->add_option("--scenario", o.scenarios, "Scenario JSON file (repeatable for report)")
      ->allow_extra_args(false);
  sub->add_option("--scan", o.scan, "Scan CSV file");
  sub->add_option("--out", o.out, "Output directory")->required();
  sub->add_flag("-v,--verbose", o.verbose, "Progress messages on stderr");
  if (!analysis) return;
  sub->add_option("--blocked-mode", o.blocked_mode, "Scan mode used as blocked patterns")
      ->check(CLI::IsMember({"phantom", "true_hand"}));
  sub->add_option("--link-budget", o.link_budget,
                  "g_rx_dbi,path_loss_db,cable_loss_db: scan values are received power");
  sub->add_option("--threshold", o.thresholds, "EIRP threshold in dBm (repeatable)")
      ->allow_extra_args(false);
  sub->add_option("--percentiles", o.percentiles, "Comma-separated percentiles")->delimiter(',');
  sub->add_option("--roi-kind", o.roi_kind, "Region of interest")
      ->check(CLI::IsMember({"r1", "r2", "r3", "r4", "r5"}));
  const char* names[5] = {"--delta1", "--delta2", "--delta3", "--delta4", "--delta5"};
  const char* help[5] = {"dB below freespace peak", "dB below blocked peak",
                         "dB below freespace peak (blocked pattern)", "dBm level (blocked pattern)",
                         "dBm level"};
  for (int k = 0; k < 5; ++k) {
    o.delta_opt[k] = sub->add_option(names[k], o.delta[k], help[k])->allow_extra_args(false);
  }
  sub->add_option("--model", o.models, "Blockage model preset (repeatable)")
      ->allow_extra_args(false)
      ->check(CLI::IsMember(model_preset_names()));
  sub->add_option("--flat-region", o.flat_region, "phi_lo,phi_hi,theta_lo,theta_hi for flat models");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hand/body blockage analysis for millimeter wave beam patterns", "mmwblock"};
  app.require_subcommand(1, 1);
  app.failure_message(CLI::FailureMessage::help);

  struct Entry {
    const char* name;
    const char* help;
    bool analysis;
  };
  const Entry entries[] = {
      {"synth", "Synthesize a scan file from a scenario", false},
      {"overlay", "Best-of-codebook overlay patterns and heatmaps", true},
      {"cdf", "Weighted EIRP CDFs, coverage and percentile losses", true},
      {"roi", "Region-of-interest mask and its sphere coverage", true},
      {"stats", "Loss statistics and Gaussian fit over a region", true},
      {"compare", "Compare blockage models against the measured pattern", true},
      {"report", "Full table, JSON and plot bundle", true},
  };
  std::vector<Options> options(std::size(entries));
  std::vector<CLI::App*> subs;
  for (std::size_t k = 0; k < std::size(entries); ++k) {
    auto* sub = app.add_subcommand(entries[k].name, entries[k].help);
    add_common(sub, options[k], entries[k].analysis);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mmwblock: " << e.what() << "\n";
    return kExitUsage;
  }

  std::size_t which = 0;
  while (!subs[which]->parsed()) ++which;
  const Options& o = options[which];
  std::ostringstream sink;
  std::ostream& log = o.verbose ? err : static_cast<std::ostream&>(sink);
  try {
    if (!entries[which].analysis) {
      fs::create_directories(o.out);
      cmd_synth(o, log);
      return kExitOk;
    }
    for (int k = 0; k < 5; ++k) {
      // Reject NaN/inf deltas before any work.
      if (o.delta_opt[k]->count() > 0 && !std::isfinite(o.delta[k])) {
        throw ConfigError(fmt::format("--delta{} must be finite", k + 1));
      }
    }
    fs::create_directories(o.out);
    const std::string name = entries[which].name;
    if (name == "overlay") cmd_overlay(o, log);
    else if (name == "cdf") cmd_cdf(o, log);
    else if (name == "roi") cmd_roi(o, log);
    else if (name == "stats") cmd_stats(o, log);
    else if (name == "compare") cmd_compare(o, log);
    else cmd_report(o, log, out);
  } catch (const ConfigError& e) {
    err << "mmwblock: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "mmwblock: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mmwblock
