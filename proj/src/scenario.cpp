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

#include "mmwblock/scenario.hpp"

#include <fstream>

#include <fmt/format.h>

#include "mmwblock/errors.hpp"

namespace mmwblock {
namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  return j.at(key).get<T>();
}

ElementKind parse_element(const std::string& s) {
  if (s == "patch") return ElementKind::patch;
  if (s == "dipole") return ElementKind::dipole;
  if (s == "isotropic") return ElementKind::isotropic;
  throw ConfigError(fmt::format("unknown element kind '{}'", s));
}

const char* element_name(ElementKind k) {
  switch (k) {
    case ElementKind::patch: return "patch";
    case ElementKind::dipole: return "dipole";
    case ElementKind::isotropic: return "isotropic";
  }
  return "?";
}

std::pair<double, double> interval(const json& j, const char* key, double lo, double hi) {
  if (!j.contains(key)) return {lo, hi};
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2) {
    throw ConfigError(fmt::format("'{}' must be a two-element array", key));
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Scenario parse(const json& j) {
  Scenario s;
  s.name = get_or<std::string>(j, "name", s.name);
  s.study_id = get_or<int>(j, "study_id", 0);
  s.subarray = get_or<std::string>(j, "subarray", "");
  s.orientation = get_or<std::string>(j, "orientation", "");
  s.grip = get_or<std::string>(j, "grip", "");

  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    s.grid.phi_step = get_or<double>(g, "phi_step", s.grid.phi_step);
    s.grid.theta_min = get_or<double>(g, "theta_min", s.grid.theta_min);
    s.grid.theta_max = get_or<double>(g, "theta_max", s.grid.theta_max);
    if (g.contains("theta_step")) s.grid.theta_step = g.at("theta_step").get<double>();
  }

  if (!j.contains("array")) throw ConfigError("scenario has no 'array' section");
  const auto& a = j.at("array");
  s.array.n_elements = get_or<int>(a, "n_elements", s.array.n_elements);
  s.array.spacing = get_or<double>(a, "spacing", s.array.spacing);
  s.array.element = parse_element(get_or<std::string>(a, "element", "isotropic"));
  s.array.phase_bits = get_or<int>(a, "phase_bits", s.array.phase_bits);
  s.array.tx_power_dbm = get_or<double>(a, "tx_power_dbm", s.array.tx_power_dbm);
  s.array.element_peak_gain_dbi = get_or<double>(a, "element_peak_gain_dbi", 0.0);
  s.array.boresight_phi_deg = get_or<double>(a, "boresight_phi_deg", s.array.boresight_phi_deg);
  s.array.front_to_back_db = get_or<double>(a, "front_to_back_db", s.array.front_to_back_db);
  s.array.validate();

  if (!j.contains("beams") || j.at("beams").empty()) {
    throw ConfigError("scenario needs a nonempty 'beams' list");
  }
  for (const auto& b : j.at("beams")) {
    BeamSpec beam;
    beam.scan_angle_deg = get_or<double>(b, "scan_deg", 0.0);
    beam.amplitude_taper = get_or<std::vector<double>>(b, "taper", {});
    beam.validate(s.array);
    s.beams.push_back(std::move(beam));
  }

  if (j.contains("blockage")) {
    for (const auto& r : j.at("blockage")) {
      MaskRegion m;
      m.region = region_from_json(r);
      m.delta_db = r.at("delta_db").get<double>();
      m.edge_taper_deg = get_or<double>(r, "edge_taper_deg", 0.0);
      if (r.contains("beam")) m.beam = r.at("beam").get<int>();
      s.blockage.regions.push_back(m);
    }
  }

  if (j.contains("analysis")) {
    const auto& an = j.at("analysis");
    auto& p = s.analysis;
    p.thresholds_dbm = get_or<std::vector<double>>(an, "thresholds_dbm", p.thresholds_dbm);
    p.percentiles = get_or<std::vector<double>>(an, "percentiles", p.percentiles);
    p.delta1 = get_or<double>(an, "delta1", p.delta1);
    p.delta2 = get_or<double>(an, "delta2", p.delta2);
    p.delta3 = get_or<double>(an, "delta3", p.delta3);
    p.delta4 = get_or<double>(an, "delta4", p.delta4);
    p.delta5 = get_or<double>(an, "delta5", p.delta5);
  }

  if (j.contains("models")) {
    for (const auto& m : j.at("models")) {
      ModelSpec spec;
      spec.preset = m.at("preset").get<std::string>();
      if (m.contains("region")) spec.region = region_from_json(m.at("region"));
      s.models.push_back(std::move(spec));
    }
  }
  return s;
}

}  // namespace

AngularRegion region_from_json(const nlohmann::json& j) {
  AngularRegion r;
  std::tie(r.phi_lo, r.phi_hi) = interval(j, "phi", 0.0, 360.0);
  std::tie(r.theta_lo, r.theta_hi) = interval(j, "theta", 0.0, 180.0);
  r.validate();
  return r;
}

nlohmann::json region_to_json(const AngularRegion& r) {
  return {{"phi", {r.phi_lo, r.phi_hi}}, {"theta", {r.theta_lo, r.theta_hi}}};
}

Scenario scenario_from_json(const nlohmann::json& j) {
  try {
    return parse(j);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("malformed scenario: {}", e.what()));
  }
}

nlohmann::json to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["study_id"] = s.study_id;
  j["subarray"] = s.subarray;
  j["orientation"] = s.orientation;
  j["grip"] = s.grip;
  j["grid"] = {{"phi_step", s.grid.phi_step},
               {"theta_min", s.grid.theta_min},
               {"theta_max", s.grid.theta_max}};
  if (s.grid.theta_step) j["grid"]["theta_step"] = *s.grid.theta_step;
  j["array"] = {{"n_elements", s.array.n_elements},
                {"spacing", s.array.spacing},
                {"element", element_name(s.array.element)},
                {"phase_bits", s.array.phase_bits},
                {"tx_power_dbm", s.array.tx_power_dbm},
                {"element_peak_gain_dbi", s.array.element_peak_gain_dbi},
                {"boresight_phi_deg", s.array.boresight_phi_deg},
                {"front_to_back_db", s.array.front_to_back_db}};
  j["beams"] = json::array();
  for (const auto& b : s.beams) {
    json jb = {{"scan_deg", b.scan_angle_deg}};
    if (!b.amplitude_taper.empty()) jb["taper"] = b.amplitude_taper;
    j["beams"].push_back(jb);
  }
  j["blockage"] = json::array();
  for (const auto& r : s.blockage.regions) {
    json jr = region_to_json(r.region);
    jr["delta_db"] = r.delta_db;
    jr["edge_taper_deg"] = r.edge_taper_deg;
    if (r.beam) jr["beam"] = *r.beam;
    j["blockage"].push_back(jr);
  }
  const auto& p = s.analysis;
  j["analysis"] = {{"thresholds_dbm", p.thresholds_dbm},
                   {"percentiles", p.percentiles},
                   {"delta1", p.delta1},
                   {"delta2", p.delta2},
                   {"delta3", p.delta3},
                   {"delta4", p.delta4},
                   {"delta5", p.delta5}};
  j["models"] = json::array();
  for (const auto& m : s.models) {
    json jm = {{"preset", m.preset}};
    if (m.region) jm["region"] = region_to_json(*m.region);
    j["models"].push_back(jm);
  }
  return j;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open scenario {}", path.string()));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(fmt::format("{}: invalid JSON: {}", path.string(), e.what()));
  }
  return scenario_from_json(j);
}

}  // namespace mmwblock
