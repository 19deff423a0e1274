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

#include "vecsim/resource.hpp"

#include <cctype>
#include <cmath>
#include <numeric>

namespace vecsim {

namespace {

void put(ResourceEstimate& est, const std::string& key, double slices) {
  est.breakdown[key] = std::llround(slices);
}

ResourceEstimate finish(ResourceEstimate est) {
  est.slices = std::accumulate(est.breakdown.begin(), est.breakdown.end(), std::int64_t{0},
                               [](std::int64_t acc, const auto& kv) { return acc + kv.second; });
  return est;
}

double unit_cost(OpClass cls, const Calibration& cal) {
  switch (cls) {
    case OpClass::Add: return cal.c_add;
    case OpClass::Mul: return cal.c_mul;
    case OpClass::Div: return cal.c_div;
    case OpClass::Convert: return cal.c_convert;
    case OpClass::Mem:
    case OpClass::Control: return 0.0;
  }
  return 0.0;
}

CoreConfig mix(std::uint32_t a, std::uint32_t m, std::uint32_t d) {
  CoreConfig cfg;
  cfg.n_add = a;
  cfg.n_mul = m;
  cfg.n_div = d;
  cfg.enable_converter = false;
  return cfg;
}

double round_to(double x, double granularity) {
  return granularity > 0 ? std::round(x / granularity) * granularity : x;
}

}  // namespace

ResourceEstimate estimate_vector(const CoreConfig& cfg, const Calibration& cal) {
  ResourceEstimate est;
  put(est, "base", cal.base_vector);
  put(est, "add", cfg.n_add * cal.c_add);
  put(est, "mul", cfg.n_mul * cal.c_mul);
  put(est, "div", cfg.n_div * cal.c_div);
  if (cfg.enable_converter) put(est, "convert", cal.c_convert);
  return finish(std::move(est));
}

ResourceEstimate estimate_sequential(const Calibration& cal) {
  ResourceEstimate est;
  put(est, "base", cal.base_seq);
  put(est, "add", cal.c_add);
  put(est, "mul", cal.c_mul);
  put(est, "div", cal.c_div);
  return finish(std::move(est));
}

ResourceEstimate estimate_tiled(const DataflowKernel& k, const Calibration& cal) {
  (void)longest_path(k, CoreConfig{});  // rejects cyclic graphs
  std::map<OpClass, double> per_class;
  for (const auto& n : k.nodes) per_class[n.cls] += unit_cost(n.cls, cal);
  ResourceEstimate est;
  for (const auto& [cls, cost] : per_class) {
    std::string key(to_string(cls));
    for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    put(est, key, k.replication * cost);
  }
  put(est, "barrier", cal.c_tiled_barrier);
  return finish(std::move(est));
}

ResourceEstimate estimate(const CoreConfig& cfg, const Calibration& cal) {
  return cfg.arch == Architecture::Sequential ? estimate_sequential(cal) : estimate_vector(cfg, cal);
}

Calibration calibrate(const CalibrationTargets& t) {
  if (t.symmetric_ratio <= 1.0 || t.asymmetric_ratio <= 1.0 || t.vector_vs_sequential <= 0.0) {
    throw InfeasibleCalibration("calibration ratios must exceed 1");
  }
  if (t.asym_div_units <= t.asym_base || t.full_units < 2) {
    throw InfeasibleCalibration("sweep shape needs more divider units than the baseline");
  }
  const double s = t.unit_scale;
  Calibration cal;
  cal.c_convert = t.c_convert;
  cal.c_tiled_barrier = t.c_tiled_barrier;

  // (base + N s) / (base + s) = r
  cal.base_vector = round_to(s * (t.full_units - t.symmetric_ratio) / (t.symmetric_ratio - 1.0), t.base_granularity);

  // (base + b s + (D - b) c_div) / (base + b s) = r
  const double baseline = cal.base_vector + t.asym_base * s;
  cal.c_div = round_to((t.asymmetric_ratio - 1.0) * baseline / (t.asym_div_units - t.asym_base), t.unit_granularity);

  const double rest = s - cal.c_div;
  cal.c_mul = round_to(rest * t.mul_share, t.unit_granularity);
  cal.c_add = rest - cal.c_mul;

  if (!(cal.c_mul > cal.c_div && cal.c_div > cal.c_add)) {
    throw InfeasibleCalibration("calibration violates c_mul > c_div > c_add");
  }
  if (cal.base_vector < 0 || cal.c_add < 0) throw InfeasibleCalibration("calibration produced a negative cost");

  const auto vec = estimate_vector(mix(t.asym_base, t.asym_base, t.asym_div_units), cal);
  cal.base_seq = std::round(static_cast<double>(vec.slices) / t.vector_vs_sequential - s);
  if (cal.base_seq < 0) throw InfeasibleCalibration("calibration produced a negative sequential base");
  return cal;
}

CalibrationResiduals residuals(const Calibration& cal, const CalibrationTargets& t) {
  auto slices = [&](std::uint32_t a, std::uint32_t m, std::uint32_t d) {
    return static_cast<double>(estimate_vector(mix(a, m, d), cal).slices);
  };
  auto rel = [](double achieved, double target) { return std::abs(achieved - target) / target; };
  const auto full = t.full_units;
  const auto b = t.asym_base;
  CalibrationResiduals r;
  r.symmetric = rel(slices(full, full, full) / slices(1, 1, 1), t.symmetric_ratio);
  r.asymmetric = rel(slices(b, b, t.asym_div_units) / slices(b, b, b), t.asymmetric_ratio);
  r.vector_vs_sequential = rel(slices(b, b, t.asym_div_units) / static_cast<double>(estimate_sequential(cal).slices),
                               t.vector_vs_sequential);
  return r;
}

}  // namespace vecsim
