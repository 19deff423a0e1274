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

#include <cmath>

#include "vecsim/core.hpp"
#include "vecsim/kernelbench.hpp"

using namespace vecsim;
using namespace vecsim::kernel;

namespace {

// Straight transcription of the per-element expression, lane by lane.
double reference_lane(const Inputs& in, std::uint32_t i) {
  auto v = [&](std::string_view name) { return in[name][i]; };
  const double t1 = v("a") * v("b");
  const double t2 = t1 * v("c");
  const double t3 = v("d") * v("e");
  const double t4 = t2 + t3;
  const double t5 = t4 * v("f");
  const double t6 = v("g") * v("h");
  const double t7 = t6 + in.s_k;
  const double t8 = t5 * t7;
  const double t9 = t8 / v("p");
  const double t10 = t9 / v("q");
  return 1.0 / t10;
}

Inputs constant(std::uint32_t width, double x, double s_k) {
  Inputs in;
  in.width = width;
  for (auto& v : in.vectors) v.assign(width, x);
  in.s_k = s_k;
  return in;
}

ExecReport simulate(const Program& p, const Inputs& in, const Layout& layout, const CoreConfig& cfg) {
  const auto data = to_data(in, layout);
  return run(p, cfg, data, {layout.out, layout.out + in.width});
}

CoreConfig width_cfg(std::uint32_t w) {
  CoreConfig cfg;
  cfg.vec_len = w;
  cfg.n_add = std::min<std::uint32_t>(8, w);
  cfg.n_mul = std::min<std::uint32_t>(8, w);
  cfg.n_div = w;
  return cfg;
}

}  // namespace

TEST(KernelProgram, InstructionTally) {
  const auto p = emit_program(24, Layout::standard(24), 1.0);
  ASSERT_EQ(p.size(), 24u);
  std::map<Opcode, int> tally;
  for (const auto& ins : p.instructions) ++tally[ins.op];
  EXPECT_EQ(tally[Opcode::VMUL], 6);
  EXPECT_EQ(tally[Opcode::VADD] + tally[Opcode::VADDS], 2);
  EXPECT_EQ(tally[Opcode::VDIV], 2);
  EXPECT_EQ(tally[Opcode::VINV], 1);
  EXPECT_EQ(tally[Opcode::VLD], 10);
  EXPECT_EQ(tally[Opcode::VST], 1);
  EXPECT_EQ(tally[Opcode::LDI], 1);
  EXPECT_EQ(p[23].op, Opcode::HALT);
}

TEST(KernelProgram, ScalarVariantShape) {
  const auto p = emit_scalar_program(3, Layout::standard(3), 1.0);
  EXPECT_EQ(p.size(), 1u + 3u * 22u + 1u);
  EXPECT_TRUE(validate(p, width_cfg(3)).empty());
}

TEST(KernelOracle, HandValues) {
  // all ones, s_k = 1: t5 = 2, t7 = 2, t10 = 4
  EXPECT_DOUBLE_EQ(oracle(constant(1, 1.0, 1.0))[0], 0.25);
  // all twos, s_k = 2: t5 = (8 + 4) * 2 = 24, t7 = 6, t10 = 144 / 4 = 36
  EXPECT_DOUBLE_EQ(oracle(constant(2, 2.0, 2.0))[1], 1.0 / 36.0);
  // all ones, s_k = 0.5: t7 = 1.5, t10 = 3
  EXPECT_DOUBLE_EQ(oracle(constant(1, 1.0, 0.5))[0], 1.0 / 3.0);
  auto in = constant(1, 1.0, 2.0);
  EXPECT_DOUBLE_EQ(oracle(in)[0], 1.0 / 6.0);
}

TEST(KernelOracle, MatchesIndependentTranscription) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto in = generate_inputs(24, seed);
    const auto got = oracle(in);
    for (std::uint32_t i = 0; i < 24; ++i) ASSERT_EQ(got[i], reference_lane(in, i));
  }
}

TEST(KernelOracle, RejectsSmallDivisors) {
  auto in = constant(4, 1.0, 1.0);
  in["p"][2] = 0.1;
  EXPECT_THROW(oracle(in), std::domain_error);
  in = constant(4, 1.0, 1.0);
  in["q"][0] = -0.2;
  EXPECT_THROW(oracle(in), std::domain_error);
  in = constant(4, 0.5, -0.25);  // g*h + s_k = 0
  EXPECT_THROW(oracle(in), std::domain_error);
  in = constant(4, 1.0, 1.0);
  in["a"].pop_back();
  EXPECT_THROW(oracle(in), std::invalid_argument);
  EXPECT_THROW(in["z"], std::out_of_range);
}

TEST(KernelInputs, DeterministicAndInDomain) {
  EXPECT_EQ(generate_inputs(24, 5).vectors, generate_inputs(24, 5).vectors);
  EXPECT_EQ(generate_inputs(24, 5).s_k, generate_inputs(24, 5).s_k);
  EXPECT_NE(generate_inputs(24, 5).vectors, generate_inputs(24, 6).vectors);
  const auto in = generate_inputs(24, 11);
  for (const auto& v : in.vectors) {
    ASSERT_EQ(v.size(), 24u);
    for (double x : v) {
      ASSERT_GE(x, kDomainLow);
      ASSERT_LE(x, kDomainHigh);
      ASSERT_EQ(Fixed64::from_real(x).to_real(), x);  // on the grid
    }
  }
  EXPECT_EQ(generate_inputs(1, 0).vectors[0].size(), 1u);
}

TEST(KernelLayout, StandardAndErrors) {
  const auto l = Layout::standard(24);
  EXPECT_EQ(l.inputs[0], 0u);
  EXPECT_EQ(l.inputs[9], 216u);
  EXPECT_EQ(l.s_k, 240u);
  EXPECT_EQ(l.out, 264u);
  EXPECT_EQ(l.address_of("q"), 216u);
  EXPECT_EQ(l.address_of("out"), 264u);
  EXPECT_FALSE(l.address_of("z").has_value());
  EXPECT_NO_THROW(l.check(24, 288));
  EXPECT_THROW(l.check(24, 287), std::invalid_argument);
  auto overlapping = l;
  overlapping.inputs[3] = 10;
  EXPECT_THROW(overlapping.check(24, 4096), std::invalid_argument);
  EXPECT_THROW(emit_program(24, overlapping, 1.0), std::invalid_argument);
}

TEST(KernelData, MemoryImage) {
  const auto in = generate_inputs(4, 1);
  const auto layout = Layout::standard(4);
  const auto data = to_data(in, layout);
  ASSERT_EQ(data.size(), 11u);
  EXPECT_EQ(data[9].addr, layout.inputs[9]);
  EXPECT_EQ(data[10].addr, layout.s_k);
  EXPECT_EQ(data[10].values[0], Fixed64::from_real(in.s_k));
  EXPECT_EQ(data[2].values[3], Fixed64::from_real(in["c"][3]));
}

TEST(KernelSimulation, WithinToleranceOfOracle) {
  for (std::uint32_t w : {1u, 8u, 24u}) {
    const auto layout = Layout::standard(w);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto in = generate_inputs(w, seed);
      const auto r = simulate(emit_program(w, layout, in.s_k), in, layout, width_cfg(w));
      const auto want = oracle(in);
      EXPECT_FALSE(r.flags.any());
      for (std::uint32_t i = 0; i < w; ++i) {
        ASSERT_LE(std::abs(r.memory[i].to_real() - want[i]) / std::abs(want[i]), 1e-6)
            << "w " << w << " seed " << seed << " lane " << i;
      }
    }
  }
}

// Property: the vector program and its unrolled scalar twin produce the
// same raw words.
TEST(KernelProperty, VectorAndScalarBitIdentical) {
  for (std::uint32_t w : {1u, 8u, 24u}) {
    const auto layout = Layout::standard(w);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto in = generate_inputs(w, seed);
      const auto vec = simulate(emit_program(w, layout, in.s_k), in, layout, width_cfg(w));
      const auto sca = simulate(emit_scalar_program(w, layout, in.s_k), in, layout, width_cfg(w));
      ASSERT_EQ(vec.memory, sca.memory) << "w " << w << " seed " << seed;
      ASSERT_EQ(vec.flags, sca.flags);
    }
  }
}
