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
#include <complex>
#include <cstring>
#include <numbers>
#include <random>

#include <doctest.h>

#include "mmwblock/errors.hpp"
#include "mmwblock/synth.hpp"
#include "oracle.hpp"

using namespace mmwblock;

namespace {

ArrayConfig ula(int n, ElementKind e = ElementKind::isotropic, int bits = 0, double d = 0.5) {
  ArrayConfig c;
  c.n_elements = n;
  c.spacing = d;
  c.element = e;
  c.phase_bits = bits;
  return c;
}

// Direct evaluation of the array sum.
double af_oracle(double d, const std::vector<double>& phases_deg, double angle_deg) {
  std::complex<double> s = 0.0;
  for (std::size_t k = 0; k < phases_deg.size(); ++k) {
    const double arg = phases_deg[k] * std::numbers::pi / 180.0 +
                       2.0 * std::numbers::pi * d * static_cast<double>(k) *
                           std::sin(angle_deg * std::numbers::pi / 180.0);
    s += std::polar(1.0, arg);
  }
  return 20.0 * std::log10(std::abs(s));
}

}  // namespace

TEST_SUITE("synth") {
  TEST_CASE("array factor examples") {
    const auto c4 = ula(4);
    const Weights ones(4, 1.0);
    CHECK(array_factor_db(c4, ones, 0.0) == doctest::Approx(20.0 * std::log10(4.0)));
    CHECK(array_factor_db(c4, ones, 0.0) == doctest::Approx(12.04).epsilon(1e-3));
    const auto c1 = ula(1);
    CHECK(array_factor_db(c1, Weights{std::polar(1.0, 1.234)}, 17.0) == doctest::Approx(0.0));
    CHECK(array_factor_db(c4, ones, 30.0) == kFloorDb);
    CHECK_THROWS_AS(array_factor_db(c4, Weights(3, 1.0), 0.0), ConfigError);
    CHECK_THROWS_AS(array_factor_db(c4, Weights(4, 1.5), 0.0), ConfigError);
  }

  TEST_CASE("array factor matches direct summation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-89.0, 89.0), ph(0.0, 360.0);
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + t % 8;
      std::vector<double> phases(static_cast<std::size_t>(n));
      Weights w;
      for (auto& p : phases) {
        p = ph(rng);
        w.push_back(std::polar(1.0, p * std::numbers::pi / 180.0));
      }
      const double a = ang(rng);
      const double expect = af_oracle(0.5, phases, a);
      if (expect > -100.0) CHECK(array_factor_db(ula(n), w, a) == doctest::Approx(expect).epsilon(1e-9));
    }
  }

  TEST_CASE("phase quantization") {
    CHECK(quantize_phase_deg(50.0, 3) == 45.0);
    CHECK(quantize_phase_deg(22.5, 3) == 0.0);
    CHECK(quantize_phase_deg(67.5, 3) == 45.0);
    CHECK(quantize_phase_deg(350.0, 3) == 0.0);
    CHECK(quantize_phase_deg(-90.0, 3) == 270.0);
    CHECK(quantize_phase_deg(123.4, 0) == 123.4);

    const auto zero = steering_phases_deg(ula(4, ElementKind::isotropic, 3), BeamSpec{0.0, {}});
    for (double p : zero) CHECK(p == 0.0);

    const auto thirty = steering_phases_deg(ula(4, ElementKind::isotropic, 3), BeamSpec{30.0, {}});
    const double expect[] = {0.0, 270.0, 180.0, 90.0};  // (0, -90, -180, -270) mod 360
    for (std::size_t k = 0; k < 4; ++k) CHECK(thirty[k] == expect[k]);
  }

  TEST_CASE("config validation") {
    CHECK_THROWS_AS(ula(0).validate(), ConfigError);
    CHECK_THROWS_AS(ula(4, ElementKind::isotropic, 9).validate(), ConfigError);
    CHECK_THROWS_AS(ula(4, ElementKind::isotropic, 0, 0.0).validate(), ConfigError);
    CHECK_THROWS_AS(BeamSpec({90.0, {}}).validate(ula(4)), ConfigError);
    CHECK_THROWS_AS(BeamSpec({0.0, {1.0, 1.0}}).validate(ula(4)), ConfigError);
    CHECK_THROWS_AS(BeamSpec({0.0, {1.0, 1.0, 1.0, 2.0}}).validate(ula(4)), ConfigError);
    CHECK_NOTHROW(BeamSpec({-45.0, {0.5, 1.0, 1.0, 0.5}}).validate(ula(4)));
  }

  TEST_CASE("quantization never raises gain at the scan angle") {
    for (int n = 2; n <= 8; ++n) {
      for (double scan = -60.0; scan <= 60.0; scan += 0.5) {
        const BeamSpec b{scan, {}};
        const double ideal = array_factor_db(ula(n), steering_weights(ula(n), b), scan);
        const double quant =
            array_factor_db(ula(n, ElementKind::isotropic, 3), steering_weights(ula(n, ElementKind::isotropic, 3), b), scan);
        CHECK(quant <= ideal + 1e-9);
        CHECK(ideal - quant <= 0.3);
      }
    }
  }

  TEST_CASE("two-element quantization against exhaustive search") {
    const auto c = ula(2, ElementKind::isotropic, 3);
    for (double scan = -60.0; scan <= 60.0; scan += 1.0) {
      double best = -1e9;
      for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
          best = std::max(best, af_oracle(0.5, {45.0 * a, 45.0 * b}, scan));
        }
      }
      const double ours = array_factor_db(c, steering_weights(c, BeamSpec{scan, {}}), scan);
      CHECK(ours <= best + 1e-9);
      CHECK(best - ours <= 0.3);
      CHECK(best <= 20.0 * std::log10(2.0) + 1e-9);
    }
  }

  TEST_CASE("element models") {
    auto patch = ula(1, ElementKind::patch);
    patch.element_peak_gain_dbi = 5.0;
    const double c45 = std::cos(std::numbers::pi / 4);
    CHECK(element_gain_db(patch, 1.0, 0.0) == doctest::Approx(5.0));
    CHECK(element_gain_db(patch, c45, c45) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(element_gain_db(patch, -1.0, 0.0) == doctest::Approx(5.0 - patch.front_to_back_db));
    auto dip = ula(1, ElementKind::dipole);
    CHECK(element_gain_db(dip, 1.0, 0.0) == doctest::Approx(0.0));
    CHECK(element_gain_db(dip, -1.0, 0.0) == doctest::Approx(0.0));
    CHECK(element_gain_db(dip, c45, c45) == doctest::Approx(10.0 * std::log10(0.5)));
    CHECK(element_gain_db(dip, 0.0, 1.0) == kFloorDb);
    CHECK(patch_exponent() == doctest::Approx(3.0 / (10.0 * std::log10(2.0))));
  }

  TEST_CASE("isotropic single element is flat") {
    auto c = ula(1);
    c.tx_power_dbm = 4.0;
    const auto set = synth_pattern_set(c, {BeamSpec{}}, make_grid(10, 10, 170));
    for (auto i : set[0].grid().valid_points()) CHECK(set[0][i] == doctest::Approx(4.0));
  }

  TEST_CASE("scan-plane beamwidths") {
    auto patch = ula(4, ElementKind::patch, 3);
    for (double s : {0.0, -30.0, 30.0}) {
      const double bw = scan_plane_beamwidth_deg(patch, BeamSpec{s, {}});
      CHECK(bw >= 25.0);
      CHECK(bw <= 30.0);
    }
    auto dip = ula(2, ElementKind::dipole, 3, 0.6);
    for (double s : {0.0, -45.0, 45.0}) {
      const double bw = scan_plane_beamwidth_deg(dip, BeamSpec{s, {}});
      CHECK(bw >= 40.0);
      CHECK(bw <= 45.0);
    }
    // Single patch element: about 90 degrees.
    CHECK(scan_plane_beamwidth_deg(ula(1, ElementKind::patch), BeamSpec{}) == doctest::Approx(90.0).epsilon(0.01));
  }

  TEST_CASE("pattern symmetry and array gain") {
    const auto g = make_grid(5, 5, 175);
    auto c = ula(4, ElementKind::patch, 3);
    const auto p = synth_pattern_set(c, {BeamSpec{}}, g)[0];
    for (auto i : g.valid_points()) {
      double mirror = 180.0 - g.phi_at(i);
      if (mirror < 0) mirror += 360.0;
      const auto j = g.find(mirror, g.theta_at(i));
      REQUIRE(j.has_value());
      CHECK(std::abs(p[i] - p[*j]) <= 1e-9);
    }
    const auto single = synth_pattern_set(ula(1, ElementKind::patch), {BeamSpec{}}, g)[0];
    CHECK(std::abs(p.max() - single.max() - 20.0 * std::log10(4.0)) <= 0.3);
    const auto codebook = synth_pattern_set(c, {BeamSpec{-30, {}}, BeamSpec{}, BeamSpec{30, {}}}, g);
    double best = kFloorDb;
    for (const auto& q : codebook) best = std::max(best, q.max());
    CHECK(std::abs(best - single.max() - 20.0 * std::log10(4.0)) <= 0.3);
  }

  TEST_CASE("angular regions") {
    AngularRegion r{350.0, 10.0, 60.0, 120.0};
    CHECK(r.contains(0.0, 90.0));
    CHECK(r.contains(355.0, 60.0));
    CHECK_FALSE(r.contains(20.0, 90.0));
    CHECK_FALSE(r.contains(0.0, 130.0));
    CHECK(r.phi_depth(0.0) == doctest::Approx(10.0));
    CHECK(r.theta_depth(70.0) == doctest::Approx(10.0));
    CHECK_THROWS_AS((AngularRegion{0, 10, 100, 50}.validate()), ConfigError);
  }

  TEST_CASE("blockage masks") {
    const auto g = make_grid(10, 10, 170);
    const auto free = synth_pattern_set(ula(4, ElementKind::patch, 3), {BeamSpec{}, BeamSpec{30, {}}}, g);

    const auto same = apply_blockage_mask(free, BlockageMask{});
    for (std::size_t b = 0; b < free.size(); ++b) {
      for (auto i : g.valid_points()) CHECK(std::memcmp(&same[b].values()[i], &free[b].values()[i], sizeof(double)) == 0);
    }

    const BlockageMask all{{MaskRegion{AngularRegion{}, 30.0, 0.0, std::nullopt}}};
    const auto down = apply_blockage_mask(free, all);
    // Points pushed below the floor are clamped there.
    for (auto i : g.valid_points()) {
      if (down[0].is_floored(i)) {
        CHECK(down[0][i] == kFloorDb);
      } else {
        CHECK(free[0][i] - down[0][i] == doctest::Approx(30.0).epsilon(1e-12));
      }
    }

    const AngularRegion lobe{200.0, 260.0, 40.0, 140.0};
    const BlockageMask refl{{MaskRegion{lobe, -6.0, 0.0, std::nullopt}}};
    const auto up = apply_blockage_mask(free, refl);
    for (auto i : g.valid_points()) {
      if (lobe.contains(g.phi_at(i), g.theta_at(i))) {
        CHECK(up[0][i] - free[0][i] == doctest::Approx(6.0).epsilon(1e-12));
      } else {
        CHECK(up[0][i] == free[0][i]);
      }
    }

    // d followed by -d restores the input up to rounding.
    const BlockageMask undo{{MaskRegion{lobe, 6.0, 0.0, std::nullopt}}};
    const auto back = apply_blockage_mask(up, undo);
    for (auto i : g.valid_points()) CHECK(std::abs(back[0][i] - free[0][i]) <= 1e-12);

    // Beam-restricted region touches only that beam.
    const BlockageMask only1{{MaskRegion{AngularRegion{}, 10.0, 0.0, 1}}};
    const auto partial = apply_blockage_mask(free, only1);
    for (auto i : g.valid_points()) {
      CHECK(partial[0][i] == free[0][i]);
      if (!partial[1].is_floored(i)) CHECK(free[1][i] - partial[1][i] == doctest::Approx(10.0));
    }
    CHECK_THROWS_AS(apply_blockage_mask(free, BlockageMask{{MaskRegion{AngularRegion{}, 1.0, 0.0, 5}}}),
                    ConfigError);
  }

  TEST_CASE("raised-cosine edge") {
    const AngularRegion r{100.0, 200.0, 40.0, 140.0};
    const BlockageMask m{{MaskRegion{r, 20.0, 20.0, std::nullopt}}};
    CHECK(mask_delta_db(m, 150.0, 90.0) == doctest::Approx(20.0));
    CHECK(mask_delta_db(m, 50.0, 90.0) == 0.0);
    const double edge = mask_delta_db(m, 105.0, 90.0);
    CHECK(edge > 0.0);
    CHECK(edge < 20.0);
    CHECK(mask_delta_db(m, 110.0, 90.0) == doctest::Approx(10.0));
    CHECK(mask_delta_db(m, 103.0, 90.0) < mask_delta_db(m, 107.0, 90.0));
  }
}
