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

#include <stdexcept>
#include <string>

namespace mmwblock {

// Invalid parameters or configuration (bad grid steps, out-of-range angles,
// malformed scenario fields).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input data that cannot be analysed: malformed scan files, patterns on
// different grids, empty regions.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridMismatch : public DataError {
 public:
  explicit GridMismatch(const std::string& where)
      : DataError(where + ": operands are defined on different grids") {}
};

}  // namespace mmwblock
