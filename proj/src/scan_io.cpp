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

#include "mmwblock/scan_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <string>
#include <tuple>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "mmwblock/errors.hpp"

namespace mmwblock {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::string_view what, std::string_view source,
               std::size_t line) {
  T value{};
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw DataError(fmt::format("{}:{}: invalid {} '{}'", source, line, what, field));
  }
  return value;
}

// Angles are keyed at micro-degree resolution.
long long angle_key(double a) { return std::llround(a * 1e6); }

}  // namespace

std::string_view to_string(ScanMode mode) {
  switch (mode) {
    case ScanMode::freespace: return "freespace";
    case ScanMode::phantom: return "phantom";
    case ScanMode::true_hand: return "true_hand";
  }
  return "?";
}

ScanMode parse_scan_mode(std::string_view name) {
  if (name == "freespace") return ScanMode::freespace;
  if (name == "phantom") return ScanMode::phantom;
  if (name == "true_hand") return ScanMode::true_hand;
  throw DataError(fmt::format("unknown mode '{}'", name));
}

void LinkBudget::validate() const {
  if (!std::isfinite(g_rx_dbi) || !std::isfinite(path_loss_db) || !std::isfinite(cable_loss_db)) {
    throw ConfigError("link budget terms must be finite");
  }
  if (path_loss_db < 0.0 || cable_loss_db < 0.0) {
    throw ConfigError("path loss and cable loss must be >= 0");
  }
}

double eirp_from_prx(double prx_dbm, const LinkBudget& lb) {
  lb.validate();
  return prx_dbm - lb.g_rx_dbi + lb.path_loss_db + lb.cable_loss_db;
}

double prx_from_eirp(double eirp_dbm, const LinkBudget& lb) {
  lb.validate();
  return eirp_dbm + lb.g_rx_dbi - lb.path_loss_db - lb.cable_loss_db;
}

double friis_path_loss_db(double distance_m, double frequency_hz) {
  if (!(distance_m > 0.0) || !(frequency_hz > 0.0)) {
    throw ConfigError("distance and frequency must be positive");
  }
  constexpr double kSpeedOfLight = 299792458.0;
  const double wavelength = kSpeedOfLight / frequency_hz;
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m / wavelength);
}

PatternSet calibrate(const PatternSet& prx, const LinkBudget& lb) {
  lb.validate();
  PatternSet out;
  out.reserve(prx.size());
  for (const auto& p : prx) {
    std::vector<double> v(p.values().begin(), p.values().end());
    for (std::size_t idx : p.grid().valid_points()) v[idx] = eirp_from_prx(v[idx], lb);
    out.emplace_back(p.grid(), std::move(v), PatternKind::eirp);
  }
  return out;
}

const PatternSet& ScanData::mode(ScanMode m) const {
  auto it = patterns.find(m);
  if (it == patterns.end()) {
    throw DataError(fmt::format("scan has no '{}' records", to_string(m)));
  }
  return it->second;
}

ScanData parse_scan_csv(std::istream& in, std::string_view source) {
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<ScanRecord> records;
  std::map<std::tuple<long long, long long, int, ScanMode>, std::size_t> seen;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kScanHeader) {
        throw DataError(fmt::format("{}:{}: expected header '{}'", source, line_no, kScanHeader));
      }
      header_seen = true;
      continue;
    }
    const auto f = split(line);
    if (f.size() != 5) {
      throw DataError(fmt::format("{}:{}: expected 5 fields, got {}", source, line_no, f.size()));
    }
    ScanRecord r;
    r.phi = parse_number<double>(f[0], "phi", source, line_no);
    r.theta = parse_number<double>(f[1], "theta", source, line_no);
    r.beam_id = parse_number<int>(f[2], "beam_id", source, line_no);
    if (r.beam_id < 0) throw DataError(fmt::format("{}:{}: negative beam_id", source, line_no));
    try {
      r.mode = parse_scan_mode(f[3]);
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}:{}: {}", source, line_no, e.what()));
    }
    r.value_dbm = parse_number<double>(f[4], "value_dbm", source, line_no);
    const auto key = std::make_tuple(angle_key(r.phi), angle_key(r.theta), r.beam_id, r.mode);
    auto [it, inserted] = seen.emplace(key, line_no);
    if (!inserted) {
      throw DataError(fmt::format("{}:{}: duplicate record (first seen on line {})", source,
                                  line_no, it->second));
    }
    records.push_back(r);
  }
  if (!header_seen) throw DataError(fmt::format("{}: empty scan file", source));
  if (records.empty()) throw DataError(fmt::format("{}: no scan records", source));

  std::map<long long, double> phis;
  std::map<long long, double> thetas;
  for (const auto& r : records) {
    phis.emplace(angle_key(r.phi), r.phi);
    thetas.emplace(angle_key(r.theta), r.theta);
  }
  std::vector<double> phi_axis;
  std::vector<double> theta_axis;
  for (const auto& [k, v] : phis) phi_axis.push_back(v);
  for (const auto& [k, v] : thetas) theta_axis.push_back(v);

  std::vector<bool> valid(phi_axis.size() * theta_axis.size(), false);
  auto point_index = [&](const ScanRecord& r) {
    const auto ip = static_cast<std::size_t>(std::distance(phis.begin(), phis.find(angle_key(r.phi))));
    const auto it =
        static_cast<std::size_t>(std::distance(thetas.begin(), thetas.find(angle_key(r.theta))));
    return it * phi_axis.size() + ip;
  };
  for (const auto& r : records) valid[point_index(r)] = true;

  std::optional<AngularGrid> grid;
  try {
    grid.emplace(phi_axis, theta_axis, valid);
  } catch (const ConfigError& e) {
    throw DataError(fmt::format("{}: cannot infer a uniform grid: {}", source, e.what()));
  }

  std::map<ScanMode, std::set<int>> beams;
  for (const auto& r : records) beams[r.mode].insert(r.beam_id);

  ScanData data{*grid, {}, {}};
  for (const auto& [mode, ids] : beams) {
    std::vector<int> id_list(ids.begin(), ids.end());
    std::map<int, std::size_t> slot;
    for (std::size_t k = 0; k < id_list.size(); ++k) slot[id_list[k]] = k;
    std::vector<std::vector<double>> values(id_list.size(),
                                            std::vector<double>(grid->size(), std::nan("")));
    for (const auto& r : records) {
      if (r.mode == mode) values[slot[r.beam_id]][point_index(r)] = r.value_dbm;
    }
    for (std::size_t k = 0; k < id_list.size(); ++k) {
      for (std::size_t idx : grid->valid_points()) {
        if (std::isnan(values[k][idx])) {
          throw DataError(fmt::format("{}: mode {} beam {} has no value at phi={} theta={}",
                                      source, to_string(mode), id_list[k], grid->phi_at(idx),
                                      grid->theta_at(idx)));
        }
      }
    }
    PatternSet set;
    for (auto& v : values) set.emplace_back(*grid, std::move(v), PatternKind::eirp);
    data.patterns.emplace(mode, std::move(set));
    data.beam_ids.emplace(mode, std::move(id_list));
  }
  return data;
}

ScanData parse_scan_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open scan file {}", path.string()));
  return parse_scan_csv(in, path.string());
}

void write_scan_csv(std::ostream& out, const std::map<ScanMode, PatternSet>& patterns) {
  out << kScanHeader << '\n';
  for (const auto& [mode, set] : patterns) {
    for (std::size_t b = 0; b < set.size(); ++b) {
      const auto& grid = set[b].grid();
      for (std::size_t idx : grid.valid_points()) {
        fmt::print(out, "{},{},{},{},{:.6f}\n", grid.phi_at(idx), grid.theta_at(idx), b,
                   to_string(mode), set[b][idx]);
      }
    }
  }
}

void write_scan_csv(const std::filesystem::path& path,
                    const std::map<ScanMode, PatternSet>& patterns) {
  std::ofstream out(path);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  write_scan_csv(out, patterns);
}

}  // namespace mmwblock
