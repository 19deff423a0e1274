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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "vecsim/dse.hpp"
#include "vecsim/kernelbench.hpp"

using namespace vecsim;
using namespace vecsim::dse;

namespace {

Program kernel_program() { return kernel::emit_program(24, kernel::Layout::standard(24), 1.0); }

std::vector<DataInit> kernel_data(std::uint64_t seed) {
  return kernel::to_data(kernel::generate_inputs(24, seed), kernel::Layout::standard(24));
}

DesignPoint pt(std::uint64_t latency, std::int64_t slices, std::string label = "") {
  DesignPoint p;
  p.label = std::move(label);
  p.latency_cycles = latency;
  p.slices = slices;
  return p;
}

// O(n^2) definition of domination.
std::vector<bool> brute_force_frontier(const std::vector<DesignPoint>& pts) {
  std::vector<bool> keep(pts.size(), true);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const auto& a = pts[j];
      const auto& b = pts[i];
      const bool no_worse = a.latency_cycles <= b.latency_cycles && a.slices <= b.slices;
      const bool better = a.latency_cycles < b.latency_cycles || a.slices < b.slices;
      if (no_worse && better) keep[i] = false;
    }
  }
  return keep;
}

}  // namespace

TEST(Tailor, DropsUnusedConverter) {
  EXPECT_FALSE(tailor(CoreConfig{}, kernel_program()).enable_converter);
  EXPECT_TRUE(tailor(CoreConfig{}, assemble("F2X s1, s2\nHALT")).enable_converter);
  CoreConfig off;
  off.enable_converter = false;
  EXPECT_TRUE(tailor(off, assemble("X2F s1, s2\nHALT")).enable_converter);
}

TEST(Sweep, SymmetricSetIsStrictlyMonotone) {
  const auto configs = apply_mixes(CoreConfig{}, parse_mix_spec("sym:1,2,4,8,16,24"));
  const auto points = sweep(kernel_program(), configs, Calibration{}, kernel_data(0));
  ASSERT_EQ(points.size(), 6u);
  EXPECT_EQ(points[0].label, "1-1-1");
  EXPECT_EQ(points[5].label, "24-24-24");
  for (std::size_t i = 1; i < points.size(); ++i) {
    EXPECT_LT(points[i].latency_cycles, points[i - 1].latency_cycles);
    EXPECT_GT(points[i].slices, points[i - 1].slices);
  }
  EXPECT_EQ(points[0].latency_cycles, 4859u);
  EXPECT_EQ(points[0].slices, 15300);
  EXPECT_EQ(points[5].latency_cycles, 259u);
  EXPECT_EQ(points[5].slices, 61300);
}

TEST(Sweep, AddingDividersIsTheBestAsymmetricStep) {
  const auto configs = apply_mixes(CoreConfig{}, parse_mix_spec("8-8-8,24-8-8,8-24-8,8-8-24"));
  const auto points = sweep(kernel_program(), configs, Calibration{}, kernel_data(0));
  ASSERT_EQ(points.size(), 4u);
  EXPECT_EQ(points[0].latency_cycles, 659u);
  EXPECT_EQ(points[3].latency_cycles, 275u);
  EXPECT_LT(points[3].latency_cycles, points[1].latency_cycles);
  EXPECT_LT(points[3].latency_cycles, points[2].latency_cycles);
}

TEST(Sweep, SingletonMatchesRun) {
  CoreConfig cfg;
  cfg.n_div = 24;
  const auto p = kernel_program();
  const auto data = kernel_data(3);
  const auto points = sweep(p, std::vector<CoreConfig>{cfg}, Calibration{}, data);
  ASSERT_EQ(points.size(), 1u);
  EXPECT_EQ(points[0].latency_cycles, run(p, cfg, data, {}).total_cycles);
  EXPECT_EQ(points[0].slices, 41300);
  EXPECT_EQ(points[0].n_div, 24u);
}

TEST(Sweep, ErrorNamesTheConfig) {
  CoreConfig bad;
  bad.n_div = 0;
  try {
    sweep(kernel_program(), std::vector<CoreConfig>{CoreConfig{}, bad}, Calibration{});
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("config 8-8-0"), std::string::npos) << e.what();
  }
}

TEST(Sweep, OrderFollowsInput) {
  const auto forward = apply_mixes(CoreConfig{}, parse_mix_spec("1-1-1,8-8-24,24-8-8,2-3-4,16-16-16"));
  auto reversed = forward;
  std::reverse(reversed.begin(), reversed.end());
  auto a = sweep(kernel_program(), forward, Calibration{});
  auto b = sweep(kernel_program(), reversed, Calibration{});
  std::reverse(b.begin(), b.end());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, sweep(kernel_program(), forward, Calibration{}));
}

TEST(Pareto, Examples) {
  const std::vector<DesignPoint> pts = {pt(100, 10, "a"), pt(50, 20, "b"), pt(120, 30, "c")};
  EXPECT_EQ(pareto(pts), (std::vector<DesignPoint>{pts[0], pts[1]}));
  EXPECT_EQ(pareto(std::vector<DesignPoint>{pt(5, 5)}).size(), 1u);
  EXPECT_TRUE(pareto(std::vector<DesignPoint>{}).empty());
  // Exact duplicates are both kept; a same-latency costlier twin is not.
  const std::vector<DesignPoint> ties = {pt(10, 10, "x"), pt(10, 10, "y"), pt(10, 11, "z")};
  EXPECT_EQ(pareto_mask(ties), (std::vector<bool>{true, true, false}));
}

TEST(ParetoProperty, MatchesBruteForce) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto n = rng() % 201;
    const auto range = 1 + rng() % 50;  // small ranges force ties
    std::vector<DesignPoint> pts;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(pt(1 + rng() % range, static_cast<std::int64_t>(1 + rng() % range)));
    }
    ASSERT_EQ(pareto_mask(pts), brute_force_frontier(pts)) << "trial " << trial;
  }
}

TEST(Projection, Examples) {
  const auto p = throughput_projection(pt(273, 41300), 200000, 100.0);
  EXPECT_EQ(p.cores, 4u);
  EXPECT_NEAR(p.calls_per_second, 1.465e6, 1e3);
  EXPECT_EQ(throughput_projection(pt(273, 41300), 41300, 100.0).cores, 1u);
  EXPECT_THROW(throughput_projection(pt(273, 41300), 41299, 100.0), std::invalid_argument);
  EXPECT_THROW(throughput_projection(pt(273, 41300), 100000, 0.0), std::invalid_argument);
}

TEST(ProjectionProperty, CoresFitBudget) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 1000; ++i) {
    const auto slices = static_cast<std::int64_t>(1 + rng() % 100000);
    const auto budget = slices + static_cast<std::int64_t>(rng() % 1000000);
    const auto p = throughput_projection(pt(1 + rng() % 1000, slices), budget, 100.0);
    ASSERT_LE(static_cast<std::int64_t>(p.cores) * slices, budget);
    ASSERT_GT(static_cast<std::int64_t>(p.cores + 1) * slices, budget);
  }
}

TEST(Amdahl, SpotValues) {
  EXPECT_NEAR(amdahl(0.35, kUnbounded), 1.538, 1e-3);
  EXPECT_NEAR(amdahl(0.80, 18.0), 4.09, 5e-3);
  EXPECT_NEAR(amdahl(0.0006, 10.0), 1.00054, 1e-5);
  EXPECT_DOUBLE_EQ(amdahl(1.0, 10.0), 10.0);
  EXPECT_THROW(amdahl(1.0, kUnbounded), std::invalid_argument);
  EXPECT_THROW(amdahl(-0.1, 2.0), std::invalid_argument);
  EXPECT_THROW(amdahl(1.1, 2.0), std::invalid_argument);
  EXPECT_THROW(amdahl(0.5, 0.5), std::invalid_argument);
  EXPECT_THROW(amdahl(NAN, 2.0), std::invalid_argument);
}

TEST(AmdahlProperty, MonotoneWithFixedPoints) {
  for (double f = 0.0; f <= 1.0; f += 0.05) {
    EXPECT_DOUBLE_EQ(amdahl(f, 1.0), 1.0);
    for (double s = 1.0; s < 100.0; s *= 1.7) {
      EXPECT_LE(amdahl(f, s), amdahl(f, s * 1.7) + 1e-12);
      if (f + 0.05 <= 1.0) {
        EXPECT_LE(amdahl(f, s), amdahl(f + 0.05, s) + 1e-12);
      }
    }
  }
  for (double s : {1.0, 2.0, 50.0, kUnbounded}) EXPECT_DOUBLE_EQ(amdahl(0.0, s), 1.0);
}

TEST(MixSpec, Parsing) {
  const auto sym = parse_mix_spec("sym:1,8,24");
  ASSERT_EQ(sym.size(), 3u);
  EXPECT_EQ(sym[2].n_div, 24u);
  const auto asym = parse_mix_spec(" 8-8-8, 8-8-24 ");
  ASSERT_EQ(asym.size(), 2u);
  EXPECT_EQ(asym[1].n_div, 24u);
  EXPECT_THROW(parse_mix_spec(""), std::invalid_argument);
  EXPECT_THROW(parse_mix_spec("sym:"), std::invalid_argument);
  EXPECT_THROW(parse_mix_spec("8-8"), std::invalid_argument);
  EXPECT_THROW(parse_mix_spec("8-8-x"), std::invalid_argument);
  EXPECT_THROW(parse_mix_spec("8-8-8,"), std::invalid_argument);
}

TEST(Compare, ThreeArchitectures) {
  CoreConfig cfg;
  cfg.n_div = 24;
  const auto in = kernel::generate_inputs(24, 0);
  const auto cmp = compare_architectures(cfg, Calibration{}, kernel::to_data(in, kernel::Layout::standard(24)), in.s_k);
  EXPECT_EQ(cmp.tiled.latency_cycles, 198u);
  EXPECT_EQ(cmp.tiled.slices, 200800);
  EXPECT_EQ(cmp.sequential.latency_cycles, 4859u);
  EXPECT_EQ(cmp.sequential.slices, 16520);
  EXPECT_EQ(cmp.vector.latency_cycles, 275u);
  EXPECT_EQ(cmp.vector.slices, 41300);
  EXPECT_EQ(cmp.vector.label, "vector 8-8-24");
  EXPECT_NEAR(static_cast<double>(cmp.sequential.latency_cycles) / cmp.vector.latency_cycles, 17.7, 0.05);
  EXPECT_DOUBLE_EQ(static_cast<double>(cmp.vector.slices) / cmp.sequential.slices, 2.5);
}
