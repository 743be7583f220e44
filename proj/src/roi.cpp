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

#include "mmwblock/roi.hpp"

#include <fmt/format.h>

#include "mmwblock/errors.hpp"

namespace mmwblock {
namespace {

PointMask at_least(const Pattern& p, double level) {
  PointMask m(p.grid());
  for (std::size_t idx : p.grid().valid_points()) m.set(idx, p[idx] >= level);
  return m;
}

void check_delta(double d, const char* name) {
  if (!(d >= 0.0)) throw ConfigError(fmt::format("{} must be >= 0 dB (got {})", name, d));
}

void check_pair(const Pattern& free, const Pattern& blocked, const char* where) {
  require_same_grid(free.grid(), blocked.grid(), where);
}

}  // namespace

std::string_view to_string(RoiKind kind) {
  switch (kind) {
    case RoiKind::r1: return "r1";
    case RoiKind::r2: return "r2";
    case RoiKind::r3: return "r3";
    case RoiKind::r4: return "r4";
    case RoiKind::r5: return "r5";
  }
  return "?";
}

RoiKind parse_roi_kind(std::string_view name) {
  if (name == "r1" || name == "R1") return RoiKind::r1;
  if (name == "r2" || name == "R2") return RoiKind::r2;
  if (name == "r3" || name == "R3") return RoiKind::r3;
  if (name == "r4" || name == "R4") return RoiKind::r4;
  if (name == "r5" || name == "R5") return RoiKind::r5;
  throw ConfigError(fmt::format("unknown RoI kind '{}'", name));
}

RoIMask roi_r1(const Pattern& free, double delta1) {
  check_delta(delta1, "delta1");
  RoiParams params;
  params.delta1 = delta1;
  params.g_max = free.max();
  return RoIMask(at_least(free, params.g_max - delta1), RoiKind::r1, params);
}

RoIMask roi_r2(const Pattern& free, const Pattern& blocked, double delta1, double delta2) {
  check_pair(free, blocked, "roi_r2");
  check_delta(delta2, "delta2");
  const auto base = roi_r1(free, delta1);
  RoiParams params = base.params();
  params.delta2 = delta2;
  params.g_max_blocked = blocked.max();
  return RoIMask(base.mask() | at_least(blocked, *params.g_max_blocked - delta2), RoiKind::r2,
                 params);
}

RoIMask roi_r3(const Pattern& free, const Pattern& blocked, double delta1, double delta3) {
  check_pair(free, blocked, "roi_r3");
  check_delta(delta3, "delta3");
  const auto base = roi_r1(free, delta1);
  RoiParams params = base.params();
  params.delta3 = delta3;
  return RoIMask(base.mask() | at_least(blocked, params.g_max - delta3), RoiKind::r3, params);
}

RoIMask roi_r4(const Pattern& free, const Pattern& blocked, double delta1, double delta4_dbm) {
  check_pair(free, blocked, "roi_r4");
  const auto base = roi_r1(free, delta1);
  RoiParams params = base.params();
  params.delta4 = delta4_dbm;
  return RoIMask(base.mask() | at_least(blocked, delta4_dbm), RoiKind::r4, params);
}

RoIMask roi_r5(const Pattern& free, const Pattern& blocked, double delta5_dbm) {
  check_pair(free, blocked, "roi_r5");
  RoiParams params;
  params.delta5 = delta5_dbm;
  params.g_max = free.max();
  return RoIMask(at_least(free, delta5_dbm) | at_least(blocked, delta5_dbm), RoiKind::r5, params);
}

RoIMask matched_r1_for_r5(const Pattern& free, double delta5_dbm) {
  RoiParams params;
  params.g_max = free.max();
  params.delta1 = params.g_max - delta5_dbm;
  params.delta5 = delta5_dbm;
  params.empty_flag = delta5_dbm > params.g_max;
  return RoIMask(at_least(free, delta5_dbm), RoiKind::r1, params);
}

RoiImprovement roi_improvement(double base_pct, double enhanced_pct) {
  RoiImprovement out;
  out.base_pct = base_pct;
  out.enhanced_pct = enhanced_pct;
  out.abs = enhanced_pct - base_pct;
  if (base_pct > 0.0) out.rel = 100.0 * out.abs / base_pct;
  return out;
}

RoiImprovement roi_improvement(const RoIMask& base, const RoIMask& enhanced, const WeightField& w) {
  require_same_grid(base.grid(), enhanced.grid(), "roi_improvement");
  return roi_improvement(fraction_of_sphere(base.mask(), w), fraction_of_sphere(enhanced.mask(), w));
}

}  // namespace mmwblock
