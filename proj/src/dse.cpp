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

#include "vecsim/dse.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <stdexcept>

#include "vecsim/archmodels.hpp"
#include "vecsim/kernelbench.hpp"

namespace vecsim::dse {

namespace {

DesignPoint point_for(const CoreConfig& cfg, std::uint64_t latency, std::int64_t slices) {
  return {cfg.mix_label(), cfg.n_add, cfg.n_mul, cfg.n_div, latency, slices};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::uint32_t parse_count(std::string_view s, std::string_view spec) {
  s = trim(s);
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed mix spec '" + std::string(spec) + "': bad count '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = s.find(sep);
    parts.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) return parts;
    s.remove_prefix(pos + 1);
  }
}

}  // namespace

CoreConfig tailor(const CoreConfig& cfg, const Program& program) {
  CoreConfig out = cfg;
  out.enable_converter = std::any_of(program.instructions.begin(), program.instructions.end(),
                                     [](const Instruction& ins) { return op_class(ins.op) == OpClass::Convert; });
  return out;
}

std::vector<DesignPoint> sweep(const Program& program, std::span<const CoreConfig> configs, const Calibration& cal,
                               std::span<const DataInit> inputs) {
  std::vector<CoreConfig> tailored;
  for (const auto& cfg : configs) {
    auto t = tailor(cfg, program);
    if (auto diags = validate(program, t); !diags.empty()) {
      throw std::invalid_argument("config " + cfg.mix_label() + ": " + InvalidProgram(diags).what());
    }
    tailored.push_back(std::move(t));
  }

  std::vector<std::future<DesignPoint>> pending;
  pending.reserve(tailored.size());
  for (const auto& cfg : tailored) {
    pending.push_back(std::async(std::launch::async, [&program, &cal, inputs, cfg] {
      const auto report = run(program, cfg, inputs, AddressRange{});
      return point_for(cfg, report.total_cycles, estimate(cfg, cal).slices);
    }));
  }
  std::vector<DesignPoint> points;
  points.reserve(pending.size());
  for (auto& f : pending) points.push_back(f.get());
  return points;
}

std::vector<bool> pareto_mask(std::span<const DesignPoint> points) {
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const auto& a = points[x];
    const auto& b = points[y];
    return a.latency_cycles != b.latency_cycles ? a.latency_cycles < b.latency_cycles : a.slices < b.slices;
  });

  // A point survives iff it has strictly fewer slices than everything with
  // lower latency, and the fewest slices within its own latency group.
  std::vector<bool> mask(points.size(), false);
  std::int64_t best_before = std::numeric_limits<std::int64_t>::max();
  for (std::size_t g = 0; g < order.size();) {
    std::size_t end = g;
    const auto latency = points[order[g]].latency_cycles;
    while (end < order.size() && points[order[end]].latency_cycles == latency) ++end;
    const auto group_min = points[order[g]].slices;
    for (std::size_t i = g; i < end; ++i) {
      const auto& p = points[order[i]];
      mask[order[i]] = p.slices == group_min && p.slices < best_before;
    }
    best_before = std::min(best_before, group_min);
    g = end;
  }
  return mask;
}

std::vector<DesignPoint> pareto(std::span<const DesignPoint> points) {
  const auto mask = pareto_mask(points);
  std::vector<DesignPoint> frontier;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (mask[i]) frontier.push_back(points[i]);
  }
  return frontier;
}

Projection throughput_projection(const DesignPoint& point, std::int64_t slices_budget, double clock_mhz) {
  if (point.slices <= 0 || point.latency_cycles == 0) throw std::invalid_argument("design point must be positive");
  if (!(clock_mhz > 0.0)) throw std::invalid_argument("clock must be positive");
  if (slices_budget < point.slices) {
    throw std::invalid_argument("budget of " + std::to_string(slices_budget) + " slices cannot hold one core of " +
                                std::to_string(point.slices));
  }
  Projection proj;
  proj.slices_budget = slices_budget;
  proj.cores = static_cast<std::uint64_t>(slices_budget / point.slices);
  proj.clock_mhz = clock_mhz;
  proj.calls_per_second = static_cast<double>(proj.cores) * clock_mhz * 1e6 / static_cast<double>(point.latency_cycles);
  return proj;
}

double amdahl(double fraction, double kernel_speedup) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw std::invalid_argument("fraction must lie in [0, 1]");
  if (!(kernel_speedup >= 1.0)) throw std::invalid_argument("kernel speedup must be at least 1");
  if (std::isinf(kernel_speedup)) {
    if (fraction == 1.0) throw std::invalid_argument("unbounded speedup of the whole program is undefined");
    return 1.0 / (1.0 - fraction);
  }
  return 1.0 / ((1.0 - fraction) + fraction / kernel_speedup);
}

std::vector<FuMix> parse_mix_spec(std::string_view spec) {
  spec = trim(spec);
  if (spec.empty()) throw std::invalid_argument("empty mix spec");
  std::vector<FuMix> mixes;
  if (spec.substr(0, 4) == "sym:") {
    for (auto part : split(spec.substr(4), ',')) {
      const auto n = parse_count(part, spec);
      mixes.push_back({n, n, n});
    }
    return mixes;
  }
  for (auto part : split(spec, ',')) {
    auto fields = split(trim(part), '-');
    if (fields.size() != 3) {
      throw std::invalid_argument("malformed mix spec '" + std::string(spec) + "': expected A-M-D, got '" +
                                  std::string(trim(part)) + "'");
    }
    mixes.push_back({parse_count(fields[0], spec), parse_count(fields[1], spec), parse_count(fields[2], spec)});
  }
  return mixes;
}

std::vector<CoreConfig> apply_mixes(const CoreConfig& base, std::span<const FuMix> mixes) {
  std::vector<CoreConfig> configs;
  for (const auto& m : mixes) {
    CoreConfig cfg = base;
    cfg.n_add = m.n_add;
    cfg.n_mul = m.n_mul;
    cfg.n_div = m.n_div;
    configs.push_back(cfg);
  }
  return configs;
}

ArchitectureComparison compare_architectures(const CoreConfig& vector_cfg, const Calibration& cal,
                                             std::span<const DataInit> inputs, double s_k,
                                             std::uint32_t barrier_cost) {
  const auto W = vector_cfg.vec_len;
  const auto layout = kernel::Layout::standard(W);
  const auto program = kernel::emit_program(W, layout, s_k);
  const auto vec_cfg = tailor(vector_cfg, program);
  const auto seq_cfg = sequential_config(vec_cfg);

  ArchitectureComparison cmp;
  const auto graph = kernel::dataflow_graph(W);
  cmp.tiled = {"tiled", 0, 0, 0, tiled_latency(graph, vec_cfg, barrier_cost), estimate_tiled(graph, cal).slices};

  auto points = sweep(program, std::vector<CoreConfig>{seq_cfg, vec_cfg}, cal, inputs);
  cmp.sequential = points[0];
  cmp.sequential.label = "sequential";
  cmp.vector = points[1];
  cmp.vector.label = "vector " + vec_cfg.mix_label();
  return cmp;
}

}  // namespace vecsim::dse
