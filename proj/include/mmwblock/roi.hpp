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

#include <optional>
#include <string>
#include <string_view>

#include "mmwblock/grid.hpp"

namespace mmwblock {

enum class RoiKind { r1, r2, r3, r4, r5 };

std::string_view to_string(RoiKind kind);
RoiKind parse_roi_kind(std::string_view name);

// Thresholds that produced a mask. delta1..delta3 are dB offsets from a peak;
// delta4 and delta5 are absolute levels in dBm.
struct RoiParams {
  std::optional<double> delta1;
  std::optional<double> delta2;
  std::optional<double> delta3;
  std::optional<double> delta4;
  std::optional<double> delta5;
  double g_max = 0.0;                   // freespace peak
  std::optional<double> g_max_blocked;  // set when the definition uses it
  bool empty_flag = false;              // matched R1 with delta5 above the peak
};

// Region of interest: the set of directions blockage statistics are taken
// over, together with the thresholds that defined it.
class RoIMask {
 public:
  RoIMask(PointMask mask, RoiKind kind, RoiParams params)
      : mask_(std::move(mask)), kind_(kind), params_(params) {}

  const PointMask& mask() const { return mask_; }
  const AngularGrid& grid() const { return mask_.grid(); }
  RoiKind kind() const { return kind_; }
  const RoiParams& params() const { return params_; }
  bool contains(std::size_t idx) const { return mask_.contains(idx); }
  std::size_t count() const { return mask_.count(); }

 private:
  PointMask mask_;
  RoiKind kind_;
  RoiParams params_;
};

// {G >= G_max - delta1}
RoIMask roi_r1(const Pattern& free, double delta1);
// R1 u {G_body >= G_max,body - delta2}
RoIMask roi_r2(const Pattern& free, const Pattern& blocked, double delta1, double delta2);
// R1 u {G_body >= G_max - delta3}
RoIMask roi_r3(const Pattern& free, const Pattern& blocked, double delta1, double delta3);
// R1 u {G_body >= delta4}
RoIMask roi_r4(const Pattern& free, const Pattern& blocked, double delta1, double delta4_dbm);
// {G >= delta5 or G_body >= delta5}
RoIMask roi_r5(const Pattern& free, const Pattern& blocked, double delta5_dbm);

// R1 with delta1 = G_max - delta5, i.e. {G >= delta5}: the freespace-only
// baseline for an R5 comparison at the same level. Empty (and flagged) when
// delta5 exceeds the peak.
RoIMask matched_r1_for_r5(const Pattern& free, double delta5_dbm);

struct RoiImprovement {
  double base_pct = 0.0;
  double enhanced_pct = 0.0;
  double abs = 0.0;
  std::optional<double> rel;  // absent when the base covers nothing
};

RoiImprovement roi_improvement(double base_pct, double enhanced_pct);
RoiImprovement roi_improvement(const RoIMask& base, const RoIMask& enhanced, const WeightField& w);

inline constexpr std::string_view kImprovementConvention =
    "rel = 100 * (coverage(enhanced) - coverage(base)) / coverage(base)";

}  // namespace mmwblock
