/*
 * Copyright 2026 The vecsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// File formats shared by the command-line tool and its tests.
//
// Config:  flat "key = value" lines, '#' comments. Every CoreConfig and
//          Calibration field has a key; unknown keys are rejected.
// Data:    CSV. The header names a column per vector: kernel names (a..q,
//          s_k, out) resolve through the standard kernel layout, "@N"
//          places a column at address N. One row per lane, decimal reals.
// Report:  JSON with a schema_version field and no run-specific metadata.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "vecsim/config.hpp"
#include "vecsim/core.hpp"
#include "vecsim/dse.hpp"
#include "vecsim/kernelbench.hpp"
#include "vecsim/resource.hpp"

namespace vecsim::io {

inline constexpr int kReportSchemaVersion = 1;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Settings {
  CoreConfig core;
  Calibration cal;
  std::uint64_t max_cycles = 10'000'000;
  std::uint32_t barrier_cost = 1;

  bool operator==(const Settings&) const = default;
};

Settings parse_settings(std::string_view text);
std::string format_settings(const Settings& settings);

struct DataSet {
  std::vector<DataInit> inits;
  std::optional<double> s_k;  // present when the file has an s_k column
};

DataSet parse_data_csv(std::string_view text, std::uint32_t width);
std::string format_kernel_csv(const kernel::Inputs& inputs);
std::string format_expected_csv(const std::vector<double>& expected);
std::vector<double> parse_expected_csv(std::string_view text);

// Shortest decimal that reads back as the same double.
std::string format_real(double x);

nlohmann::ordered_json report_to_json(const ExecReport& report);
std::string design_points_csv(const std::vector<dse::DesignPoint>& points);
nlohmann::ordered_json comparison_to_json(const dse::ArchitectureComparison& cmp);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace vecsim::io
