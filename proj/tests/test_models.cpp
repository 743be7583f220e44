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
#include "mmwblock/models.hpp"
#include "oracle.hpp"

using namespace mmwblock;

namespace {

// Random pattern with values mirrored about theta = 90 on a grid without an
// equator row, so both hemispheres carry identical value distributions.
Pattern symmetric_pattern(const AngularGrid& g, std::mt19937_64& rng) {
  const auto base = oracle::random_pattern(g, rng, -60, -20, 0.1);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double th = g.theta_at(i) < 90 ? g.theta_at(i) : 180.0 - g.theta_at(i);
    v[i] = base[*g.find(g.phi_at(i), th)];
  }
  return Pattern(g, v, PatternKind::eirp);
}

}  // namespace

TEST_SUITE("models") {
  TEST_CASE("presets") {
    const auto hand = model_preset("prior-hand-15.3");
    CHECK(hand.kind == ModelKind::constant_loss);
    CHECK(hand.loss_db == 15.3);
    CHECK(model_preset("prior-body-8.5").loss_db == 8.5);
    CHECK_THROWS_AS(model_preset("3gpp-flat-30"), ConfigError);
    const auto flat = model_preset("3gpp-flat-30", AngularRegion{60, 120, 50, 130});
    CHECK(flat.kind == ModelKind::flat_region);
    CHECK(flat.loss_db == 30.0);
    CHECK_THROWS_AS(model_preset("nope"), ConfigError);
    CHECK(model_preset_names().size() == 3);
  }

  TEST_CASE("apply model examples") {
    const auto g = make_grid(10, 10, 170);
    std::mt19937_64 rng(31);
    const auto free = oracle::random_pattern(g, rng);
    const auto all = apply_model(free, BlockageModel::flat_region(AngularRegion{}, 30));
    for (auto i : g.valid_points()) CHECK(all[i] == free[i] - 30.0);
    const auto id = apply_model(free, BlockageModel::constant_loss(0));
    for (auto i : g.valid_points()) CHECK(id[i] == free[i]);

    const auto region = AngularRegion{60, 120, 50, 130};
    const auto flat = apply_model(free, BlockageModel::flat_region(region, 15));
    const auto cons = apply_model(free, BlockageModel::constant_loss(15));
    for (auto i : g.valid_points()) {
      CHECK(flat[i] >= cons[i]);
      CHECK(flat[i] == (region.contains(g.phi_at(i), g.theta_at(i)) ? free[i] - 15 : free[i]));
    }

    CHECK_THROWS_AS(apply_model(free, BlockageModel::flat_region(AngularRegion{1, 2, 1, 2}, 30)), ConfigError);
    const auto other = oracle::constant(make_grid(30, 30, 150), 1.0, PatternKind::loss);
    CHECK_THROWS_AS(apply_model(free, BlockageModel::measured_mask(other)), GridMismatch);
  }

  TEST_CASE("linearity in the loss field") {
    const auto g = make_grid(10, 10, 170);
    std::mt19937_64 rng(32);
    for (int t = 0; t < 20; ++t) {
      const auto free = oracle::random_pattern(g, rng);
      const auto l1 = oracle::random_pattern(g, rng, -10, 20, 0.1);
      const auto l2 = oracle::random_pattern(g, rng, -10, 20, 0.1);
      std::vector<double> sum(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) sum[i] = l1[i] + l2[i];
      const Pattern m1(g, {l1.values().begin(), l1.values().end()}, PatternKind::loss);
      const Pattern m2(g, {l2.values().begin(), l2.values().end()}, PatternKind::loss);
      const auto twice = apply_model(apply_model(free, BlockageModel::measured_mask(m1)), BlockageModel::measured_mask(m2));
      const auto once = apply_model(free, BlockageModel::measured_mask(Pattern(g, sum, PatternKind::loss)));
      for (auto i : g.valid_points()) CHECK(std::abs(twice[i] - once[i]) <= 1e-9);
    }
  }

  TEST_CASE("constant loss shifts every percentile") {
    const auto g = make_grid(10, 10, 170);
    const auto w = solid_angle_weights(g);
    std::mt19937_64 rng(33);
    for (double c : {0.0, 8.5, 15.3, 30.0}) {
      const auto free = oracle::random_pattern(g, rng);
      const auto out = apply_model(free, BlockageModel::constant_loss(c));
      const auto cf = weighted_cdf(free, w);
      const auto co = weighted_cdf(out, w);
      for (double p : kComparePercentiles) CHECK(std::abs(percentile_loss(cf, co, p) - c) <= 1e-9);
    }
  }

  TEST_CASE("flat-region mixture identity") {
    const auto g = make_grid(5, 2.5, 177.5, 5);
    const auto w = solid_angle_weights(g);
    std::mt19937_64 rng(34);
    const auto free = symmetric_pattern(g, rng);
    const auto out = apply_model(free, BlockageModel::flat_region(AngularRegion{0, 360, 0, 90}, 30));
    const auto cf = weighted_cdf(free, w);
    const auto co = weighted_cdf(out, w);
    for (double t = -100; t <= -10; t += 0.37) {
      CHECK(std::abs(co.at(t) - 0.5 * (cf.at(t) + cf.at(t + 30))) <= 1e-6);
    }
  }

  TEST_CASE("comparison report") {
    const auto g = make_grid(5, 5, 175);
    const auto w = solid_angle_weights(g);
    std::mt19937_64 rng(35);
    const auto free = oracle::random_pattern(g, rng, -60, -20, 0.1);
    const auto roi = roi_r1(free, 1000);

    const auto self = compare_models(free, {{"self", free}}, roi, w);
    REQUIRE(self.candidates.size() == 1);
    for (const auto& d : self.candidates[0].deltas) CHECK(d.delta_db == 0.0);
    CHECK(self.crossovers.empty());

    const auto par = compare_models(
        free, {{"m30", oracle::shifted(free, -30)}, {"m15", oracle::shifted(free, -15)}}, roi, w);
    CHECK(par.crossovers.empty());
    for (const auto& d : par.candidates[0].deltas) CHECK(d.delta_db == doctest::Approx(30.0));
    for (const auto& d : par.candidates[1].deltas) CHECK(d.delta_db == doctest::Approx(15.0));
    REQUIRE(par.candidates[0].deltas.size() == 4);
    CHECK(par.candidates[0].deltas[0].percentile == 90.0);

    // Gains in the strong directions and deep loss in the weak ones: this
    // CDF is wider than free - 15 and must cross it.
    std::vector<double> v(g.size());
    for (auto i : g.valid_points()) v[i] = free[i] >= -40 ? free[i] + 5 : free[i] - 25;
    const Pattern measured(g, v, PatternKind::eirp);
    const auto x = compare_models(free, {{"prior", oracle::shifted(free, -15)}, {"hand", measured}}, roi, w);
    bool found = false;
    for (const auto& c : x.crossovers) {
      if ((c.first == "prior" && c.second == "hand") || (c.first == "hand" && c.second == "prior")) {
        found = !c.eirp_dbm.empty();
        for (double e : c.eirp_dbm) CHECK(std::abs(e * 10 - std::round(e * 10)) <= 1e-9);
      }
    }
    CHECK(found);

    const RoIMask none(PointMask(g), RoiKind::r1, RoiParams{});
    CHECK_THROWS_AS(compare_models(free, {{"self", free}}, none, w), DataError);
  }

  TEST_CASE("crossover detection") {
    const WeightedCDF a({0.0, 1.0, 2.0}, {0.2, 0.6, 1.0});
    const WeightedCDF b({0.5, 1.5}, {0.5, 1.0});
    CHECK(detect_crossovers(a, a).empty());
    CHECK_FALSE(detect_crossovers(a, b).empty());
  }
}
