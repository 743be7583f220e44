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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mmwblock/grid.hpp"
#include "mmwblock/synth.hpp"

namespace mmwblock {

struct GridSpec {
  double phi_step = 5.0;
  double theta_min = 5.0;
  double theta_max = 175.0;
  std::optional<double> theta_step;

  AngularGrid build() const { return make_grid(phi_step, theta_min, theta_max, theta_step); }
};

// RoI thresholds and table axes used by the analysis commands.
struct AnalysisParams {
  std::vector<double> thresholds_dbm{-35.0, -40.0, -45.0};
  std::vector<double> percentiles{90.0, 80.0, 50.0, 20.0};
  double delta1 = 5.0;
  double delta2 = 5.0;
  double delta3 = 5.0;
  double delta4 = -35.0;
  double delta5 = -35.0;
};

struct ModelSpec {
  std::string preset;
  std::optional<AngularRegion> region;
};

// A synthetic study: array and codebook, grip-style blockage mask and the
// analysis parameters for its report.
struct Scenario {
  std::string name = "scenario";
  int study_id = 0;
  std::string subarray;
  std::string orientation;
  std::string grip;
  GridSpec grid;
  ArrayConfig array;
  std::vector<BeamSpec> beams;
  BlockageMask blockage;
  AnalysisParams analysis;
  std::vector<ModelSpec> models;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Scenario& s);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json region_to_json(const AngularRegion& r);
AngularRegion region_from_json(const nlohmann::json& j);

}  // namespace mmwblock
