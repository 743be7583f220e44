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

#include <cmath>
#include <random>

#include <doctest.h>

#include "mmwblock/analysis.hpp"
#include "mmwblock/errors.hpp"
#include "mmwblock/roi.hpp"
#include "mmwblock/synth.hpp"
#include "oracle.hpp"

using namespace mmwblock;

namespace {

// Brute-force threshold set.
PointMask at_least(const Pattern& p, double level) {
  PointMask m(p.grid());
  for (auto i : p.grid().valid_points()) m.set(i, p[i] >= level);
  return m;
}

ArrayConfig patch4() {
  ArrayConfig c;
  c.n_elements = 4;
  c.element = ElementKind::patch;
  c.phase_bits = 3;
  c.element_peak_gain_dbi = 5;
  c.tx_power_dbm = -40;
  c.front_to_back_db = 20;
  return c;
}

std::vector<BeamSpec> three_beams() { return {BeamSpec{-30, {}}, BeamSpec{0, {}}, BeamSpec{30, {}}}; }

}  // namespace

TEST_SUITE("roi") {
  TEST_CASE("r1 examples") {
    const auto g = make_grid(30, 30, 150);
    std::mt19937_64 rng(2);
    const auto p = oracle::random_pattern(g, rng);
    const auto zero = roi_r1(p, 0.0);
    CHECK(zero.mask() == at_least(p, p.max()));
    CHECK(zero.count() >= 1);
    CHECK(roi_r1(p, 1000.0).count() == g.valid_count());
    CHECK(roi_r1(p, 5.0).kind() == RoiKind::r1);
    CHECK(*roi_r1(p, 5.0).params().delta1 == 5.0);
    CHECK(roi_r1(p, 5.0).params().g_max == p.max());
    CHECK_THROWS_AS(roi_r1(p, -1.0), ConfigError);
  }

  TEST_CASE("r1 of the synthetic patch overlay") {
    const auto g = make_grid(5, 5, 175);
    const auto ov = overlay_best_beam(synth_pattern_set(patch4(), three_beams(), g));
    const auto r1 = roi_r1(ov.pattern, 5.0);
    const double pct = fraction_of_sphere(r1.mask(), solid_angle_weights(g));
    CHECK(pct >= 10.0);
    CHECK(pct <= 20.0);
    double direct = 0, tot = 0;
    for (auto i : g.valid_points()) {
      const double w = oracle::sine_weight(g.theta_at(i));
      tot += w;
      if (ov.pattern[i] >= ov.pattern.max() - 5.0) direct += w;
    }
    CHECK(pct == doctest::Approx(100.0 * direct / tot).epsilon(1e-12));
  }

  TEST_CASE("r2 and r3") {
    const auto g = make_grid(30, 30, 150);
    std::mt19937_64 rng(4);
    const auto free = oracle::random_pattern(g, rng);
    CHECK(roi_r2(free, free, 5, 5).mask() == roi_r1(free, 5).mask());
    CHECK(roi_r3(free, free, 5, 5).mask() == roi_r1(free, 5).mask());

    const auto blocked = oracle::random_pattern(g, rng);
    CHECK(roi_r2(free, blocked, 5, 0).mask() == (roi_r1(free, 5).mask() | at_least(blocked, blocked.max())));
    CHECK(roi_r3(free, oracle::shifted(free, -10), 5, 5).mask() == roi_r1(free, 5).mask());
    CHECK(*roi_r2(free, blocked, 5, 3).params().g_max_blocked == blocked.max());
    CHECK_THROWS_AS(roi_r2(free, oracle::constant(make_grid(90, 45, 135), 0), 5, 5), GridMismatch);
  }

  TEST_CASE("reflection scenario") {
    const auto g = make_grid(5, 5, 175);
    const auto free = synth_pattern_set(patch4(), three_beams(), g);
    const AngularRegion lobe{230, 310, 50, 130};
    const auto blocked = apply_blockage_mask(free, BlockageMask{{MaskRegion{lobe, -25.0, 0.0, std::nullopt}}});
    const auto gf = overlay_best_beam(free).pattern;
    const auto gb = overlay_best_beam(blocked).pattern;
    const auto r1 = roi_r1(gf, 5);
    const auto r2 = roi_r2(gf, gb, 5, 5);
    CHECK(r1.mask().is_subset_of(r2.mask()));
    CHECK(r2.count() > r1.count());
    const auto extra = r2.mask() - r1.mask();
    for (auto i : g.valid_points()) {
      if (extra.contains(i)) CHECK(lobe.contains(g.phi_at(i), g.theta_at(i)));
    }

    const double level = -45.0;
    const auto base = matched_r1_for_r5(gf, level);
    const auto r5 = roi_r5(gf, gb, level);
    CHECK(r5.count() > base.count());
    const auto diff = r5.mask() - base.mask();
    for (auto i : g.valid_points()) {
      if (diff.contains(i)) CHECK(lobe.contains(g.phi_at(i), g.theta_at(i)));
    }
    const auto w = solid_angle_weights(g);
    const auto imp = roi_improvement(base, r5, w);
    CHECK(imp.abs > 0.0);
    CHECK(*imp.rel > 0.0);
  }

  TEST_CASE("r4") {
    const auto g = make_grid(30, 30, 150);
    std::mt19937_64 rng(6);
    const auto free = oracle::random_pattern(g, rng);
    const auto blocked = oracle::random_pattern(g, rng);
    CHECK(roi_r4(free, blocked, 5, blocked.min() - 1).count() == g.valid_count());
    CHECK(roi_r4(free, blocked, 5, blocked.max() + 1).mask() == roi_r1(free, 5).mask());
    CHECK(roi_r4(free, blocked, 5, -35).mask() == (roi_r1(free, 5).mask() | at_least(blocked, -35)));
  }

  TEST_CASE("r5 and matched r1") {
    const auto g = make_grid(30, 30, 150);
    std::mt19937_64 rng(8);
    const auto free = oracle::random_pattern(g, rng);
    const auto blocked = oracle::random_pattern(g, rng);
    CHECK(roi_r5(free, free, -35).mask() == at_least(free, -35));
    CHECK(roi_r5(free, blocked, -200).count() == g.valid_count());
    CHECK(matched_r1_for_r5(free, free.max()).mask() == at_least(free, free.max()));
    CHECK(matched_r1_for_r5(free, -200).count() == g.valid_count());
    const auto empty = matched_r1_for_r5(free, free.max() + 1);
    CHECK(empty.count() == 0);
    CHECK(empty.params().empty_flag);
    CHECK(*matched_r1_for_r5(free, -35).params().delta1 == doctest::Approx(free.max() + 35));
    CHECK(matched_r1_for_r5(free, -35).mask().is_subset_of(roi_r5(free, blocked, -35).mask()));
  }

  TEST_CASE("improvement arithmetic") {
    const auto a = roi_improvement(29.7, 30.8);
    CHECK(std::abs(a.abs - 1.1) <= 0.05);
    CHECK(std::abs(*a.rel - 3.7) <= 0.2);
    const auto b = roi_improvement(54.7, 57.2);
    CHECK(std::abs(b.abs - 2.5) <= 0.05);
    CHECK(std::abs(*b.rel - 4.57) <= 0.05);
    const auto c = roi_improvement(12.0, 12.0);
    CHECK(c.abs == 0.0);
    CHECK(*c.rel == 0.0);
    CHECK_FALSE(roi_improvement(0.0, 5.0).rel.has_value());
  }

  TEST_CASE("roi kind names") {
    for (auto k : {RoiKind::r1, RoiKind::r2, RoiKind::r3, RoiKind::r4, RoiKind::r5}) {
      CHECK(parse_roi_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_roi_kind("r6"), ConfigError);
  }
}
