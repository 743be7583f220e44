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

#include "mmwblock/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>

#include <fmt/format.h>

namespace mmwblock::svg {
namespace {

struct Rgb {
  double r, g, b;
};

// Viridis sampled at five stops.
constexpr std::array<Rgb, 5> kStops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98},
                                     {253, 231, 37}}};

std::string colour(double t) {
  t = std::clamp(t, 0.0, 1.0) * static_cast<double>(kStops.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(t), kStops.size() - 2);
  const double f = t - static_cast<double>(i);
  auto mix = [&](double a, double b) { return static_cast<int>(std::lround(a + (b - a) * f)); };
  return fmt::format("#{:02x}{:02x}{:02x}", mix(kStops[i].r, kStops[i + 1].r),
                     mix(kStops[i].g, kStops[i + 1].g), mix(kStops[i].b, kStops[i + 1].b));
}

std::string num(double v) { return fmt::format("{:.2f}", v); }

}  // namespace

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string heatmap(const Pattern& p, const std::string& title, double vmin, double vmax,
                    const std::string& unit) {
  const auto& grid = p.grid();
  const double left = 60.0;
  const double top = 40.0;
  const double plot_w = 720.0;
  const double plot_h = 340.0;
  const double cell_w = plot_w / static_cast<double>(grid.phi_count());
  const double cell_h = plot_h / static_cast<double>(grid.theta_count());
  const double span = vmax > vmin ? vmax - vmin : 1.0;

  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"440\" "
                 "viewBox=\"0 0 900 440\" font-family=\"sans-serif\" font-size=\"12\">\n");
  fmt::format_to(it, "<rect width=\"900\" height=\"440\" fill=\"white\"/>\n");
  fmt::format_to(it, "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                 num(left + plot_w / 2), escape(title));
  for (std::size_t it_idx = 0; it_idx < grid.theta_count(); ++it_idx) {
    for (std::size_t ip = 0; ip < grid.phi_count(); ++ip) {
      const auto idx = grid.index(ip, it_idx);
      if (!grid.is_valid(idx)) continue;
      fmt::format_to(it,
                     "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                     num(left + static_cast<double>(ip) * cell_w),
                     num(top + static_cast<double>(it_idx) * cell_h), num(cell_w + 0.3),
                     num(cell_h + 0.3), colour((p[idx] - vmin) / span));
    }
  }
  fmt::format_to(it,
                 "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
                 "stroke=\"black\"/>\n",
                 num(left), num(top), num(plot_w), num(plot_h));
  for (int phi = 0; phi <= 360; phi += 60) {
    const double x = left + plot_w * phi / 360.0;
    fmt::format_to(it, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", num(x),
                   num(top + plot_h + 16), phi);
  }
  const double t0 = grid.theta_values().front();
  const double t1 = grid.theta_values().back();
  for (int theta = 0; theta <= 180; theta += 30) {
    if (theta < t0 - 1e-9 || theta > t1 + 1e-9) continue;
    const double frac = t1 > t0 ? (theta - t0) / (t1 - t0) : 0.0;
    const double y = top + cell_h / 2 + frac * (plot_h - cell_h);
    fmt::format_to(it, "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", num(left - 6),
                   num(y + 4), theta);
  }
  fmt::format_to(it, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">phi (deg)</text>\n",
                 num(left + plot_w / 2), num(top + plot_h + 34));
  fmt::format_to(it,
                 "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" "
                 "transform=\"rotate(-90 16 {})\">theta (deg)</text>\n",
                 num(top + plot_h / 2), num(top + plot_h / 2));

  const double bar_x = left + plot_w + 30;
  const int steps = 50;
  for (int k = 0; k < steps; ++k) {
    const double t = 1.0 - (k + 0.5) / steps;
    fmt::format_to(it, "<rect x=\"{}\" y=\"{}\" width=\"18\" height=\"{}\" fill=\"{}\"/>\n",
                   num(bar_x), num(top + plot_h * k / steps), num(plot_h / steps + 0.3),
                   colour(t));
  }
  fmt::format_to(it, "<text x=\"{}\" y=\"{}\">{:.1f}</text>\n", num(bar_x + 24), num(top + 10),
                 vmax);
  fmt::format_to(it, "<text x=\"{}\" y=\"{}\">{:.1f}</text>\n", num(bar_x + 24),
                 num(top + plot_h), vmin);
  fmt::format_to(it, "<text x=\"{}\" y=\"{}\">{}</text>\n", num(bar_x), num(top - 8),
                 escape(unit));
  out += "</svg>\n";
  return out;
}

std::vector<std::pair<double, double>> step_points(const std::vector<double>& values,
                                                   const std::vector<double>& cumulative) {
  std::vector<std::pair<double, double>> pts;
  double prev = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    pts.emplace_back(values[i], prev);
    pts.emplace_back(values[i], cumulative[i]);
    prev = cumulative[i];
  }
  return pts;
}

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series,
                       double x_tick) {
  double xmin = 0.0;
  double xmax = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      xmin = first ? x : std::min(xmin, x);
      xmax = first ? x : std::max(xmax, x);
      first = false;
    }
  }
  xmin = std::floor(xmin / x_tick) * x_tick;
  xmax = std::ceil(xmax / x_tick) * x_tick;
  if (xmax <= xmin) xmax = xmin + x_tick;
  // Keep the tick count readable.
  while ((xmax - xmin) / x_tick > 12) x_tick *= 2;

  const double left = 70.0;
  const double top = 40.0;
  const double w = 640.0;
  const double h = 360.0;
  auto px = [&](double x) { return left + w * (x - xmin) / (xmax - xmin); };
  auto py = [&](double y) { return top + h * (1.0 - y); };

  std::string out;
  auto it = std::back_inserter(out);
  fmt::format_to(it,
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"460\" "
                 "viewBox=\"0 0 900 460\" font-family=\"sans-serif\" font-size=\"12\">\n");
  fmt::format_to(it, "<rect width=\"900\" height=\"460\" fill=\"white\"/>\n");
  fmt::format_to(it, "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n",
                 num(left + w / 2), escape(title));
  for (double x = xmin; x <= xmax + 1e-9; x += x_tick) {
    fmt::format_to(it,
                   "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#dddddd\"/>\n"
                   "<text x=\"{0}\" y=\"{3}\" text-anchor=\"middle\">{4}</text>\n",
                   num(px(x)), num(top), num(top + h), num(top + h + 16), x);
  }
  for (int k = 0; k <= 10; k += 2) {
    const double y = k / 10.0;
    fmt::format_to(it,
                   "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#dddddd\"/>\n"
                   "<text x=\"{3}\" y=\"{4}\" text-anchor=\"end\">{5:.1f}</text>\n",
                   num(left), num(py(y)), num(left + w), num(left - 6), num(py(y) + 4), y);
  }
  fmt::format_to(it,
                 "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
                 "stroke=\"black\"/>\n",
                 num(left), num(top), num(w), num(h));
  for (const auto& s : series) {
    if (s.points.empty()) continue;
    std::string pts;
    for (const auto& [x, y] : s.points) pts += fmt::format("{},{} ", num(px(x)), num(py(y)));
    pts.pop_back();
    fmt::format_to(it,
                   "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\"{} points=\"{}\"/>\n",
                   s.color, s.dashed ? " stroke-dasharray=\"6,4\"" : "", pts);
  }
  double ly = top + 10;
  for (const auto& s : series) {
    fmt::format_to(it,
                   "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" "
                   "stroke-width=\"2\"{4}/>\n<text x=\"{5}\" y=\"{6}\">{7}</text>\n",
                   num(left + w + 14), num(ly), num(left + w + 40), s.color,
                   s.dashed ? " stroke-dasharray=\"6,4\"" : "", num(left + w + 46), num(ly + 4),
                   escape(s.label));
    ly += 18;
  }
  fmt::format_to(it, "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                 num(left + w / 2), num(top + h + 36), escape(x_label));
  fmt::format_to(it,
                 "<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" "
                 "transform=\"rotate(-90 18 {0})\">{1}</text>\n",
                 num(top + h / 2), escape(y_label));
  out += "</svg>\n";
  return out;
}

}  // namespace mmwblock::svg
