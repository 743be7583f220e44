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

#include <string>
#include <utility>
#include <vector>

#include "mmwblock/grid.hpp"

namespace mmwblock::svg {

// Pattern drawn in the phi-theta plane: phi horizontal (0-360), theta
// vertical increasing downwards. Invalid points are left blank.
std::string heatmap(const Pattern& p, const std::string& title, double vmin, double vmax,
                    const std::string& unit = "dBm");

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  std::string color = "#1f77b4";
  bool dashed = false;
};

// Polyline chart; x range is padded out to multiples of `x_tick`.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       double x_tick = 10.0);

// Points tracing a right-continuous step function through (value, F).
std::vector<std::pair<double, double>> step_points(const std::vector<double>& values,
                                                   const std::vector<double>& cumulative);

// Escapes &, <, > and quotes for attribute/text content.
std::string escape(const std::string& s);

}  // namespace mmwblock::svg
