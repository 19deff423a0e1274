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

#include "vecsim/kernelbench.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace vecsim::kernel {

namespace {

std::size_t input_index(std::string_view name) {
  auto it = std::find(kInputNames.begin(), kInputNames.end(), name);
  if (it == kInputNames.end()) throw std::out_of_range("unknown kernel input '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - kInputNames.begin());
}

Instruction make(Opcode op, std::uint32_t d = 0, std::uint32_t a = 0, std::uint32_t b = 0) {
  Instruction ins;
  ins.op = op;
  ins.d = d;
  ins.a = a;
  ins.b = b;
  return ins;
}

Instruction mem(Opcode op, std::uint32_t reg, std::uint32_t addr) {
  Instruction ins;
  ins.op = op;
  if (op == Opcode::VLD || op == Opcode::SLD) {
    ins.d = reg;
  } else {
    ins.a = reg;
  }
  ins.addr = addr;
  return ins;
}

Instruction ldi(std::uint32_t d, double value) {
  Instruction ins = make(Opcode::LDI, d);
  ins.imm = Fixed64::from_real(value);
  return ins;
}

}  // namespace

Layout Layout::standard(std::uint32_t width) {
  Layout l;
  for (std::uint32_t i = 0; i < l.inputs.size(); ++i) l.inputs[i] = i * width;
  l.s_k = 10 * width;
  l.out = 11 * width;
  return l;
}

std::optional<std::uint32_t> Layout::address_of(std::string_view name) const {
  if (name == "s_k") return s_k;
  if (name == "out") return out;
  auto it = std::find(kInputNames.begin(), kInputNames.end(), name);
  if (it == kInputNames.end()) return std::nullopt;
  return inputs[static_cast<std::size_t>(it - kInputNames.begin())];
}

void Layout::check(std::uint32_t width, std::uint32_t dmem_words) const {
  std::vector<std::uint32_t> bases(inputs.begin(), inputs.end());
  bases.push_back(s_k);
  bases.push_back(out);
  std::sort(bases.begin(), bases.end());
  for (std::size_t i = 0; i + 1 < bases.size(); ++i) {
    if (bases[i] + static_cast<std::uint64_t>(width) > bases[i + 1]) {
      throw std::invalid_argument("kernel layout regions overlap at address " + std::to_string(bases[i + 1]));
    }
  }
  if (bases.back() + static_cast<std::uint64_t>(width) > dmem_words) {
    throw std::invalid_argument("kernel layout does not fit " + std::to_string(dmem_words) + " words of data memory");
  }
}

const std::vector<double>& Inputs::operator[](std::string_view name) const { return vectors[input_index(name)]; }
std::vector<double>& Inputs::operator[](std::string_view name) { return vectors[input_index(name)]; }

Program emit_program(std::uint32_t width, const Layout& layout, double s_k) {
  layout.check(width, 0xFFFFFFFFu);
  Program p;
  auto& out = p.instructions;
  out.push_back(ldi(1, s_k));
  for (std::uint32_t i = 0; i < 10; ++i) out.push_back(mem(Opcode::VLD, i, layout.inputs[i]));
  // v0..v9 hold a..q; v10/v11 are temporaries.
  out.push_back(make(Opcode::VMUL, 10, 0, 1));    // t1 = a*b
  out.push_back(make(Opcode::VMUL, 10, 10, 2));   // t2 = t1*c
  out.push_back(make(Opcode::VMUL, 11, 3, 4));    // t3 = d*e
  out.push_back(make(Opcode::VADD, 10, 10, 11));  // t4 = t2+t3
  out.push_back(make(Opcode::VMUL, 10, 10, 5));   // t5 = t4*f
  out.push_back(make(Opcode::VMUL, 11, 6, 7));    // t6 = g*h
  out.push_back(make(Opcode::VADDS, 11, 11, 1));  // t7 = t6+s_k
  out.push_back(make(Opcode::VMUL, 10, 10, 11));  // t8 = t5*t7
  out.push_back(make(Opcode::VDIV, 10, 10, 8));   // t9 = t8/p
  out.push_back(make(Opcode::VDIV, 10, 10, 9));   // t10 = t9/q
  out.push_back(make(Opcode::VINV, 10, 10));      // out = 1/t10
  out.push_back(mem(Opcode::VST, 10, layout.out));
  out.push_back(make(Opcode::HALT));
  return p;
}

Program emit_scalar_program(std::uint32_t width, const Layout& layout, double s_k) {
  layout.check(width, 0xFFFFFFFFu);
  Program p;
  auto& out = p.instructions;
  // s1 = s_k, s2..s11 = a..q, s12/s13 temporaries.
  out.push_back(ldi(1, s_k));
  for (std::uint32_t lane = 0; lane < width; ++lane) {
    for (std::uint32_t i = 0; i < 10; ++i) out.push_back(mem(Opcode::SLD, 2 + i, layout.inputs[i] + lane));
    out.push_back(make(Opcode::SMUL, 12, 2, 3));
    out.push_back(make(Opcode::SMUL, 12, 12, 4));
    out.push_back(make(Opcode::SMUL, 13, 5, 6));
    out.push_back(make(Opcode::SADD, 12, 12, 13));
    out.push_back(make(Opcode::SMUL, 12, 12, 7));
    out.push_back(make(Opcode::SMUL, 13, 8, 9));
    out.push_back(make(Opcode::SADD, 13, 13, 1));
    out.push_back(make(Opcode::SMUL, 12, 12, 13));
    out.push_back(make(Opcode::SDIV, 12, 12, 10));
    out.push_back(make(Opcode::SDIV, 12, 12, 11));
    out.push_back(make(Opcode::SINV, 12, 12));
    out.push_back(mem(Opcode::SST, 12, layout.out + lane));
  }
  out.push_back(make(Opcode::HALT));
  return p;
}

DataflowKernel dataflow_graph(std::uint32_t width) {
  DataflowKernel k;
  k.replication = width;
  // ids follow the temporaries: 1..10 = t1..t10, 11 = out
  k.nodes = {{1, OpClass::Mul}, {2, OpClass::Mul}, {3, OpClass::Mul},  {4, OpClass::Add},
             {5, OpClass::Mul}, {6, OpClass::Mul}, {7, OpClass::Add},  {8, OpClass::Mul},
             {9, OpClass::Div}, {10, OpClass::Div}, {11, OpClass::Div}};
  k.edges = {{1, 2}, {2, 4}, {3, 4}, {4, 5}, {5, 8}, {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11}};
  return k;
}

std::vector<double> oracle(const Inputs& in) {
  std::vector<double> result(in.width);
  const auto& a = in["a"];
  const auto& b = in["b"];
  const auto& c = in["c"];
  const auto& d = in["d"];
  const auto& e = in["e"];
  const auto& f = in["f"];
  const auto& g = in["g"];
  const auto& h = in["h"];
  const auto& p = in["p"];
  const auto& q = in["q"];
  for (const auto& v : in.vectors) {
    if (v.size() != in.width) throw std::invalid_argument("kernel input vector length does not match width");
  }
  for (std::uint32_t i = 0; i < in.width; ++i) {
    const double t7 = g[i] * h[i] + in.s_k;
    if (std::abs(p[i]) < kDivisorBound || std::abs(q[i]) < kDivisorBound || std::abs(t7) < kDivisorBound) {
      throw std::domain_error("kernel divisor below bound at lane " + std::to_string(i));
    }
    const double t5 = (a[i] * b[i] * c[i] + d[i] * e[i]) * f[i];
    const double t10 = t5 * t7 / p[i] / q[i];
    result[i] = 1.0 / t10;
  }
  return result;
}

Inputs generate_inputs(std::uint32_t width, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Steps of 2^-32 across [0.5, 2.0].
  constexpr std::uint64_t kSteps = std::uint64_t{3} << 31;
  auto draw = [&] { return kDomainLow + std::ldexp(static_cast<double>(rng() % (kSteps + 1)), -32); };
  Inputs in;
  in.width = width;
  for (auto& v : in.vectors) {
    v.resize(width);
    for (auto& x : v) x = draw();
  }
  in.s_k = draw();
  return in;
}

std::vector<DataInit> to_data(const Inputs& inputs, const Layout& layout) {
  std::vector<DataInit> data;
  for (std::size_t i = 0; i < inputs.vectors.size(); ++i) {
    DataInit init{layout.inputs[i], {}};
    for (double x : inputs.vectors[i]) init.values.push_back(Fixed64::from_real(x));
    data.push_back(std::move(init));
  }
  data.push_back({layout.s_k, {Fixed64::from_real(inputs.s_k)}});
  return data;
}

}  // namespace vecsim::kernel
