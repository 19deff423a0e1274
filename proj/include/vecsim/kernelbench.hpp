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

// Synthetic benchmark kernel with the per-iteration op mix of an
// atmospheric convection loop: 6 multiplications, 2 additions,
// 2 divisions and 1 inversion per element.
//
//   t1 = a*b    t2 = t1*c   t3 = d*e    t4 = t2+t3   t5 = t4*f
//   t6 = g*h    t7 = t6+s_k t8 = t5*t7  t9 = t8/p    t10 = t9/q
//   out = 1/t10
//
// Only the tally is fixed by the workload; the expression itself is a
// stand-in that keeps every intermediate well conditioned on [0.5, 2].

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "vecsim/archmodels.hpp"
#include "vecsim/isa.hpp"

namespace vecsim::kernel {

inline constexpr std::array<std::string_view, 10> kInputNames = {"a", "b", "c", "d", "e", "f", "g", "h", "p", "q"};
inline constexpr double kDomainLow = 0.5;
inline constexpr double kDomainHigh = 2.0;
inline constexpr double kDivisorBound = 0.25;

// Base addresses of the kernel's W-word regions in data memory.
struct Layout {
  std::array<std::uint32_t, 10> inputs{};
  std::uint32_t s_k = 0;  // one word used
  std::uint32_t out = 0;

  // Region i at i*W, ordered a..q, s_k, out.
  static Layout standard(std::uint32_t width);

  std::optional<std::uint32_t> address_of(std::string_view name) const;
  // Throws std::invalid_argument on overlapping regions or when the
  // regions do not fit `dmem_words`.
  void check(std::uint32_t width, std::uint32_t dmem_words) const;
};

struct Inputs {
  std::uint32_t width = 0;
  std::array<std::vector<double>, 10> vectors;  // in kInputNames order
  double s_k = 1.0;

  const std::vector<double>& operator[](std::string_view name) const;
  std::vector<double>& operator[](std::string_view name);
};

// Straight-line vector program: LDI, 10 VLD, 6 VMUL, VADD, VADDS, 2 VDIV,
// VINV, VST, HALT. s_k is baked into the LDI immediate.
Program emit_program(std::uint32_t width, const Layout& layout, double s_k);

// The same per-lane arithmetic in scalar instructions, one unrolled body
// per element.
Program emit_scalar_program(std::uint32_t width, const Layout& layout, double s_k);

// Dependency graph of one element, replicated `width` times.
DataflowKernel dataflow_graph(std::uint32_t width);

// Double-precision reference. Throws std::domain_error when a divisor
// falls below kDivisorBound in magnitude.
std::vector<double> oracle(const Inputs& inputs);

// Deterministic per seed; every value lies on the 2^-32 grid in
// [kDomainLow, kDomainHigh], so it converts to fixed point exactly.
Inputs generate_inputs(std::uint32_t width, std::uint64_t seed);

// Memory image of the inputs (including the s_k word) under `layout`.
std::vector<DataInit> to_data(const Inputs& inputs, const Layout& layout);

}  // namespace vecsim::kernel
