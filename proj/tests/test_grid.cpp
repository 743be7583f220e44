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
#include <limits>
#include <random>

#include <doctest.h>

#include "mmwblock/errors.hpp"
#include "mmwblock/grid.hpp"
#include "oracle.hpp"

using namespace mmwblock;

TEST_SUITE("grid") {
  TEST_CASE("make_grid counts") {
    const auto g = make_grid(5, 5, 175);
    CHECK(g.phi_count() == 72);
    CHECK(g.theta_count() == 35);
    CHECK(g.valid_count() == 72 * 35);
    CHECK(g.phi_values().back() == doctest::Approx(355));
    CHECK_FALSE(g.find(0, 180).has_value());
    CHECK(g.find(10, 90).has_value());

    const auto small = make_grid(90, 45, 135);
    CHECK(small.phi_count() == 4);
    CHECK(small.theta_count() == 2);
    CHECK(small.size() == 8);
  }

  TEST_CASE("make_grid rejects bad steps and ranges") {
    CHECK_THROWS_AS(make_grid(7, 5, 175), ConfigError);
    CHECK_THROWS_AS(make_grid(5, 5, 177), ConfigError);
    CHECK_THROWS_AS(make_grid(0, 5, 175), ConfigError);
    CHECK_THROWS_AS(make_grid(100, 5, 175), ConfigError);
    CHECK_THROWS_AS(make_grid(5, 90, 90), ConfigError);
    CHECK_THROWS_AS(make_grid(5, 0, 90), ConfigError);
    CHECK_THROWS_AS(make_grid(5, 5, 180), ConfigError);
  }

  TEST_CASE("grid constructor invariants") {
    CHECK_THROWS_AS(AngularGrid({0, 10, 10}, {90}), ConfigError);
    CHECK_THROWS_AS(AngularGrid({0, 10, 30}, {90}), ConfigError);
    CHECK_THROWS_AS(AngularGrid({0, 360}, {90}), ConfigError);
    CHECK_THROWS_AS(AngularGrid({0}, {0}), ConfigError);
    CHECK_THROWS_AS(AngularGrid({0, 180}, {90}, {false, false}), ConfigError);
    CHECK_THROWS_AS(AngularGrid({0, 180}, {90}, {true}), ConfigError);
    const AngularGrid g({0, 180}, {90}, {true, false});
    CHECK(g.valid_count() == 1);
  }

  TEST_CASE("sine weights") {
    const AngularGrid two({0}, {30, 90});
    const auto w = solid_angle_weights(two);
    CHECK(w[two.index(0, 1)] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(w[two.index(0, 0)] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const AngularGrid one({0, 90}, {60}, {false, true});
    CHECK(solid_angle_weights(one)[1] == 1.0);
    CHECK(solid_angle_weights(one)[0] == 0.0);

    const auto full = make_grid(5, 5, 175);
    const auto wf = solid_angle_weights(full);
    double sum = 0.0;
    for (double x : wf.values()) sum += x;
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(wf[full.index(0, 17)] > wf[full.index(0, 0)]);
    for (std::size_t t = 1; t <= 17; ++t) {
      CHECK(wf[full.index(3, t)] > wf[full.index(3, t - 1)]);
    }
  }

  TEST_CASE("weights match the sine oracle on random grids") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const auto g = oracle::random_grid(rng);
      const auto w = solid_angle_weights(g);
      double tot = 0.0;
      for (auto i : g.valid_points()) tot += oracle::sine_weight(g.theta_at(i));
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double expect = g.is_valid(i) ? oracle::sine_weight(g.theta_at(i)) / tot : 0.0;
        CHECK(w[i] == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("fraction_of_sphere") {
    const auto g = make_grid(5, 5, 175);
    const auto w = solid_angle_weights(g);
    CHECK(fraction_of_sphere(PointMask(g, true), w) == doctest::Approx(100.0));
    CHECK(fraction_of_sphere(PointMask(g, false), w) == 0.0);

    // The equator row belongs to the upper half; on a 1-degree grid it
    // carries under 1% of the weight.
    const auto fine = make_grid(1, 1, 179);
    const auto wf = solid_angle_weights(fine);
    PointMask upper(fine), lower(fine);
    for (std::size_t i = 0; i < fine.size(); ++i) {
      (fine.theta_at(i) <= 90.0 ? upper : lower).set(i, true);
    }
    CHECK(std::abs(fraction_of_sphere(upper, wf) - 50.0) <= 0.5);
    CHECK(fraction_of_sphere(upper, wf) + fraction_of_sphere(lower, wf) == doctest::Approx(100.0));

    // Without an equator row the halves are exactly balanced.
    const auto split = make_grid(5, 2.5, 177.5, 5);
    PointMask north(split);
    for (std::size_t i = 0; i < split.size(); ++i) north.set(i, split.theta_at(i) <= 90.0);
    CHECK(fraction_of_sphere(north, solid_angle_weights(split)) == doctest::Approx(50.0).epsilon(1e-12));

    const auto other = make_grid(10, 10, 170);
    CHECK_THROWS_AS(fraction_of_sphere(PointMask(other, true), w), GridMismatch);
  }

  TEST_CASE("point mask algebra") {
    const auto g = make_grid(90, 45, 135);
    PointMask a(g), b(g);
    a.set(0, true);
    a.set(1, true);
    b.set(1, true);
    b.set(2, true);
    CHECK((a | b).count() == 3);
    CHECK((a & b).count() == 1);
    CHECK((a - b).count() == 1);
    CHECK((a & b).is_subset_of(a));
    CHECK_FALSE(a.is_subset_of(b));

    const AngularGrid partial({0, 180}, {90}, {true, false});
    PointMask m(partial, true);
    CHECK(m.count() == 1);
    CHECK_FALSE(m.contains(1));
  }

  TEST_CASE("pattern floor and validation") {
    const auto g = make_grid(90, 45, 135);
    std::vector<double> v(8, -30.0);
    v[0] = -250.0;
    v[1] = -std::numeric_limits<double>::infinity();
    const Pattern p(g, v, PatternKind::eirp);
    CHECK(p[0] == kFloorDb);
    CHECK(p[1] == kFloorDb);
    CHECK(p.is_floored(0));
    CHECK_FALSE(p.is_floored(2));
    CHECK(p.floored_count() == 2);
    CHECK(p.max() == -30.0);
    CHECK(p.min() == kFloorDb);

    v[1] = std::nan("");
    CHECK_THROWS_AS(Pattern(g, v, PatternKind::eirp), DataError);
    v[1] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Pattern(g, v, PatternKind::loss), DataError);
    CHECK_THROWS_AS(Pattern(g, std::vector<double>(3, 0.0), PatternKind::loss), ConfigError);

    const AngularGrid partial({0, 180}, {90}, {true, false});
    const Pattern q(partial, {1.0, std::nan("")}, PatternKind::loss);
    CHECK(std::isnan(q[1]));
    CHECK(q.kind() == PatternKind::loss);
  }

  TEST_CASE("common grid checks") {
    const auto a = make_grid(90, 45, 135);
    const auto b = make_grid(90, 45, 135, 90);
    CHECK_FALSE(a == make_grid(90, 45, 135, 45));
    CHECK(a == b);
    const auto c = make_grid(45, 45, 135);
    PatternSet set{oracle::constant(a, 0), oracle::constant(c, 0)};
    CHECK_THROWS_AS(require_common_grid(set, "test"), GridMismatch);
  }
}
