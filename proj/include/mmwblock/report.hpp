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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mmwblock/grid.hpp"
#include "mmwblock/models.hpp"
#include "mmwblock/roi.hpp"
#include "mmwblock/stats.hpp"
#include "mmwblock/scenario.hpp"

namespace mmwblock {

// Everything needed to analyse one study: the codebook patterns with and
// without blockage plus table parameters.
struct StudyInput {
  std::string name;
  int study_id = 0;
  std::string subarray;
  std::string orientation;
  std::string grip;
  PatternSet free;
  PatternSet blocked;
  AnalysisParams analysis;
  std::vector<std::pair<std::string, BlockageModel>> models;
  nlohmann::json source;  // scenario or scan description, echoed into the report
};

// Synthesizes the freespace codebook and applies the scenario's mask.
StudyInput study_from_scenario(const Scenario& s);

struct StudyResult {
  nlohmann::json json;
  std::vector<std::string> summary_row;
  std::map<std::string, std::string> files;  // file name -> contents
};

StudyResult analyze_study(const StudyInput& input);

std::vector<std::string> summary_header();

// Writes summary.csv, summary.json and per-study tables and SVG plots.
void write_report_bundle(const std::vector<StudyInput>& studies,
                         const std::filesystem::path& out_dir);

// Conventions embedded in every JSON report.
nlohmann::json conventions_json();

nlohmann::json roi_params_json(const RoIMask& roi);
nlohmann::json stats_json(const std::optional<LossStats>& s);

void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace mmwblock
