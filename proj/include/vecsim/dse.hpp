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
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vecsim/config.hpp"
#include "vecsim/core.hpp"
#include "vecsim/resource.hpp"

namespace vecsim::dse {

struct DesignPoint {
  std::string label;  // "A-M-D" or an architecture name
  std::uint32_t n_add = 0;
  std::uint32_t n_mul = 0;
  std::uint32_t n_div = 0;
  std::uint64_t latency_cycles = 0;
  std::int64_t slices = 0;

  bool operator==(const DesignPoint&) const = default;
};

// Drops hardware the program never uses. Only the converter is optional
// today; FU counts are the caller's choice.
CoreConfig tailor(const CoreConfig& cfg, const Program& program);

// One point per config, in input order. Configs are simulated
// concurrently; the result does not depend on scheduling.
std::vector<DesignPoint> sweep(const Program& program, std::span<const CoreConfig> configs, const Calibration& cal,
                               std::span<const DataInit> inputs = {});

// Points not dominated in (latency, slices); duplicates of a frontier point
// are all kept. Input order is preserved.
std::vector<DesignPoint> pareto(std::span<const DesignPoint> points);
std::vector<bool> pareto_mask(std::span<const DesignPoint> points);

struct Projection {
  std::int64_t slices_budget = 0;
  std::uint64_t cores = 0;
  double clock_mhz = 0.0;
  double calls_per_second = 0.0;
  double amdahl_fraction = 0.0;
  double overall_speedup = 1.0;
};

// Independent kernel calls spread across replicated cores, no interconnect
// cost. Throws std::invalid_argument if not even one core fits.
Projection throughput_projection(const DesignPoint& point, std::int64_t slices_budget, double clock_mhz);

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

// 1 / ((1 - f) + f / S); S may be kUnbounded.
double amdahl(double fraction, double kernel_speedup);

struct FuMix {
  std::uint32_t n_add, n_mul, n_div;
};

// "A-M-D,A-M-D,..." or "sym:1,2,4".
std::vector<FuMix> parse_mix_spec(std::string_view spec);
std::vector<CoreConfig> apply_mixes(const CoreConfig& base, std::span<const FuMix> mixes);

struct ArchitectureComparison {
  DesignPoint tiled;
  DesignPoint sequential;
  DesignPoint vector;
};

// The benchmark kernel on all three architectures. `inputs` are kernel
// memory images; s_k is baked into the simulated programs.
ArchitectureComparison compare_architectures(const CoreConfig& vector_cfg, const Calibration& cal,
                                             std::span<const DataInit> inputs, double s_k,
                                             std::uint32_t barrier_cost = 1);

}  // namespace vecsim::dse
