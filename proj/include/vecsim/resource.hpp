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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "vecsim/archmodels.hpp"
#include "vecsim/config.hpp"

namespace vecsim {

// Slice-cost coefficients of the linear resource model.
struct Calibration {
  double c_add = 350.0;
  double c_mul = 900.0;
  double c_div = 750.0;
  double c_convert = 800.0;
  double base_vector = 13300.0;  // controller, register banks, sequencing wrappers
  double base_seq = 14520.0;     // controller plus per-unit array-handling logic
  double c_tiled_barrier = 400.0;

  bool operator==(const Calibration&) const = default;
};

struct ResourceEstimate {
  std::int64_t slices = 0;
  std::map<std::string, std::int64_t> breakdown;  // sums exactly to slices
};

// base_vector + n_add c_add + n_mul c_mul + n_div c_div (+ c_convert)
ResourceEstimate estimate_vector(const CoreConfig& cfg, const Calibration& cal);
// base_seq + c_add + c_mul + c_div, no converter
ResourceEstimate estimate_sequential(const Calibration& cal);
// replication * sum of per-node unit costs + barrier
ResourceEstimate estimate_tiled(const DataflowKernel& k, const Calibration& cal);
// Dispatches on cfg.arch.
ResourceEstimate estimate(const CoreConfig& cfg, const Calibration& cal);

// Ratio targets the coefficients are fitted to, plus the free choices that
// pin down an otherwise under-determined system.
struct CalibrationTargets {
  double symmetric_ratio = 4.0;   // slices(full-full-full) / slices(1-1-1)
  std::uint32_t full_units = 24;  // one unit per lane
  double asymmetric_ratio = 1.4;  // slices(b-b-div_units) / slices(b-b-b)
  std::uint32_t asym_base = 8;
  std::uint32_t asym_div_units = 24;
  double vector_vs_sequential = 2.5;  // slices(b-b-div_units) / slices(sequential)

  double unit_scale = 2000.0;   // c_add + c_mul + c_div
  double mul_share = 0.72;      // of the non-divider remainder
  double base_granularity = 100.0;
  double unit_granularity = 50.0;
  double c_convert = 800.0;
  double c_tiled_barrier = 400.0;
};

class InfeasibleCalibration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Solves the ratio constraints for base_vector, c_div and base_seq, splits
// the remaining unit scale between adder and multiplier, and rounds to the
// requested granularities. Throws InfeasibleCalibration when the result
// breaks c_mul > c_div > c_add or goes negative.
Calibration calibrate(const CalibrationTargets& targets = {});

// Relative deviation of each achieved ratio from its target.
struct CalibrationResiduals {
  double symmetric = 0.0;
  double asymmetric = 0.0;
  double vector_vs_sequential = 0.0;
};
CalibrationResiduals residuals(const Calibration& cal, const CalibrationTargets& targets = {});

}  // namespace vecsim
