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
#include <iosfwd>
#include <map>
#include <string_view>
#include <vector>

#include "mmwblock/grid.hpp"

namespace mmwblock {

enum class ScanMode { freespace, phantom, true_hand };

std::string_view to_string(ScanMode mode);
ScanMode parse_scan_mode(std::string_view name);

struct ScanRecord {
  double phi = 0.0;
  double theta = 0.0;
  int beam_id = 0;
  ScanMode mode = ScanMode::freespace;
  double value_dbm = 0.0;
};

// Chamber calibration terms of P_rx = EIRP + G_rx - path loss - cable loss.
struct LinkBudget {
  double g_rx_dbi = 0.0;
  double path_loss_db = 0.0;
  double cable_loss_db = 0.0;

  void validate() const;
};

double eirp_from_prx(double prx_dbm, const LinkBudget& lb);
double prx_from_eirp(double eirp_dbm, const LinkBudget& lb);

// Free-space path loss 20 log10(4 pi d / lambda).
double friis_path_loss_db(double distance_m, double frequency_hz);

// Converts patterns of received power into EIRP.
PatternSet calibrate(const PatternSet& prx, const LinkBudget& lb);

// One pattern set per mode found in a scan file. beam_ids[mode][k] is the
// file's beam id for patterns[mode][k].
struct ScanData {
  AngularGrid grid;
  std::map<ScanMode, PatternSet> patterns;
  std::map<ScanMode, std::vector<int>> beam_ids;

  const PatternSet& mode(ScanMode m) const;
  bool has(ScanMode m) const { return patterns.count(m) != 0; }
};

inline constexpr std::string_view kScanHeader = "phi,theta,beam_id,mode,value_dbm";

// Header `phi,theta,beam_id,mode,value_dbm`. The grid is inferred from the
// distinct angles and must be uniform; a point absent for every record is
// marked invalid, a point missing for only some beams is an error.
ScanData parse_scan_csv(std::istream& in, std::string_view source = "<stream>");
ScanData parse_scan_csv(const std::filesystem::path& path);

// Values are written with six decimals; beam ids default to 0..n-1.
void write_scan_csv(std::ostream& out, const std::map<ScanMode, PatternSet>& patterns);
void write_scan_csv(const std::filesystem::path& path,
                    const std::map<ScanMode, PatternSet>& patterns);

}  // namespace mmwblock
