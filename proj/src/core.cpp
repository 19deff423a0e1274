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

#include "vecsim/core.hpp"

#include <algorithm>
#include <bit>

namespace vecsim {

std::uint64_t waves(std::uint64_t elements, std::uint64_t units) {
  if (units == 0) throw std::invalid_argument("waves: unit count must be positive");
  return (elements + units - 1) / units;
}

std::uint32_t units_in_class(OpClass cls, const CoreConfig& cfg) {
  switch (cls) {
    case OpClass::Add: return cfg.n_add;
    case OpClass::Mul: return cfg.n_mul;
    case OpClass::Div: return cfg.n_div;
    case OpClass::Mem: return cfg.port_width();
    case OpClass::Control: return 1;
    case OpClass::Convert: return cfg.enable_converter ? 1 : 0;
  }
  return 0;
}

namespace {

std::uint32_t class_latency(OpClass cls, const CoreConfig& cfg) {
  switch (cls) {
    case OpClass::Add: return cfg.lat_add;
    case OpClass::Mul: return cfg.lat_mul;
    case OpClass::Div: return cfg.lat_div;
    case OpClass::Convert: return cfg.lat_convert;
    case OpClass::Mem: return 1;
    case OpClass::Control: return 0;
  }
  return 0;
}

std::string describe(std::uint32_t pc, const Instruction& ins) {
  return "instruction " + std::to_string(pc) + " (" + format_instruction(ins) + ")";
}

}  // namespace

std::uint64_t instr_cost(const Instruction& ins, const CoreConfig& cfg) {
  const auto& entry = info(ins.op);
  const std::uint64_t issue = cfg.issue_cost;
  switch (entry.cls) {
    case OpClass::Control:
      return issue;
    case OpClass::Convert:
      return issue + cfg.lat_convert;
    case OpClass::Mem:
      return issue + (entry.vector ? waves(cfg.vec_len, cfg.port_width()) : 1);
    case OpClass::Add:
    case OpClass::Mul:
    case OpClass::Div: {
      const std::uint64_t lat = class_latency(entry.cls, cfg);
      if (!entry.vector) return issue + lat;
      return issue + waves(cfg.vec_len, units_in_class(entry.cls, cfg)) * lat;
    }
  }
  return issue;
}

MachineState reset(const CoreConfig& cfg) {
  MachineState s;
  s.sregs.assign(cfg.n_sregs, Fixed64{});
  s.vregs.assign(static_cast<std::size_t>(cfg.n_vregs) * cfg.vec_len, Fixed64{});
  s.dmem.assign(cfg.dmem_words, Fixed64{});
  for (auto cls : kAllOpClasses) s.busy[cls] = 0;
  return s;
}

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out = "program failed validation:";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

}  // namespace

InvalidProgram::InvalidProgram(std::vector<std::string> diagnostics)
    : std::invalid_argument(join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

Core::Core(Program program, CoreConfig cfg) : program_(std::move(program)), cfg_(std::move(cfg)) { reset(); }

void Core::reset() { state_ = vecsim::reset(cfg_); }

void Core::load_program_data() { load(program_.data_init); }

void Core::load(std::span<const DataInit> inits) {
  for (const auto& init : inits) {
    if (init.addr + static_cast<std::uint64_t>(init.values.size()) > state_.dmem.size()) {
      throw std::out_of_range("data initializer at " + std::to_string(init.addr) + " with " +
                              std::to_string(init.values.size()) + " words does not fit data memory");
    }
    std::copy(init.values.begin(), init.values.end(), state_.dmem.begin() + init.addr);
  }
}

Fixed64 Core::sreg(std::uint32_t i) const { return i == 0 ? Fixed64{} : state_.sregs.at(i); }

std::span<const Fixed64> Core::vreg(std::uint32_t i) const {
  return std::span<const Fixed64>(state_.vregs).subspan(static_cast<std::size_t>(i) * cfg_.vec_len, cfg_.vec_len);
}

Fixed64& Core::sreg_mut(std::uint32_t i) {
  if (i >= state_.sregs.size()) {
    throw ExecutionFault(describe(state_.pc, program_[state_.pc]) + ": scalar register " + std::to_string(i) +
                             " out of range",
                         state_.pc);
  }
  return state_.sregs[i];
}

std::span<Fixed64> Core::vreg_mut(std::uint32_t i) {
  if (i >= cfg_.n_vregs) {
    throw ExecutionFault(describe(state_.pc, program_[state_.pc]) + ": vector register " + std::to_string(i) +
                             " out of range",
                         state_.pc);
  }
  return std::span<Fixed64>(state_.vregs).subspan(static_cast<std::size_t>(i) * cfg_.vec_len, cfg_.vec_len);
}

// s0 is hardwired to zero.
void Core::write_sreg(std::uint32_t i, Fixed64 v) {
  auto& slot = sreg_mut(i);
  if (i != 0) slot = v;
}

void Core::check_mem(std::uint64_t addr, std::uint64_t width) const {
  if (addr + width > state_.dmem.size()) {
    throw ExecutionFault(describe(state_.pc, program_[state_.pc]) + ": memory access [" + std::to_string(addr) +
                             ", " + std::to_string(addr + width) + ") outside data memory of " +
                             std::to_string(state_.dmem.size()) + " words",
                         state_.pc);
  }
}

// Sequencing wrapper: lanes [first, first+units) go to the units together,
// each wave occupying its units for `latency` cycles.
template <typename LaneOp>
void Core::vector_waves(OpClass cls, std::uint32_t units, std::uint32_t latency, LaneOp&& op) {
  if (units == 0) {
    throw ExecutionFault(describe(state_.pc, program_[state_.pc]) + ": no " + std::string(to_string(cls)) +
                             " units instantiated",
                         state_.pc);
  }
  const std::uint32_t W = cfg_.vec_len;
  for (std::uint32_t first = 0; first < W; first += units) {
    const std::uint32_t last = std::min(W, first + units);
    for (std::uint32_t lane = first; lane < last; ++lane) op(lane);
    state_.cycles += latency;
    state_.busy[cls] += static_cast<std::uint64_t>(last - first) * latency;
  }
}

void Core::step() {
  if (state_.halted) return;
  if (state_.pc >= program_.size()) {
    throw ExecutionFault("program counter " + std::to_string(state_.pc) + " ran past the end of the program",
                         state_.pc);
  }
  const auto& ins = program_[state_.pc];
  const auto& entry = info(ins.op);
  auto& flags = state_.flags;
  std::uint32_t next_pc = state_.pc + 1;

  state_.cycles += cfg_.issue_cost;
  state_.busy[OpClass::Control] += cfg_.issue_cost;
  ++state_.instr_count;

  auto scalar_latency = [&](OpClass cls) {
    const auto lat = class_latency(cls, cfg_);
    state_.cycles += lat;
    state_.busy[cls] += lat;
  };
  auto scalar_binary = [&](auto fn) {
    const Fixed64 a = sreg_mut(ins.a);
    const Fixed64 b = sreg_mut(ins.b);
    write_sreg(ins.d, fn(ins.a == 0 ? Fixed64{} : a, ins.b == 0 ? Fixed64{} : b));
    scalar_latency(entry.cls);
  };
  auto vector_binary = [&](auto fn) {
    auto dst = vreg_mut(ins.d);
    auto lhs = vreg_mut(ins.a);
    auto rhs = vreg_mut(ins.b);
    vector_waves(entry.cls, units_in_class(entry.cls, cfg_), class_latency(entry.cls, cfg_),
                 [&](std::uint32_t lane) { dst[lane] = fn(lhs[lane], rhs[lane]); });
  };
  auto vector_broadcast = [&](auto fn) {
    auto dst = vreg_mut(ins.d);
    auto lhs = vreg_mut(ins.a);
    sreg_mut(ins.b);
    const Fixed64 s = sreg(ins.b);
    vector_waves(entry.cls, units_in_class(entry.cls, cfg_), class_latency(entry.cls, cfg_),
                 [&](std::uint32_t lane) { dst[lane] = fn(lhs[lane], s); });
  };

  auto add = [&](Fixed64 a, Fixed64 b) { return fx::add(a, b, flags); };
  auto sub = [&](Fixed64 a, Fixed64 b) { return fx::sub(a, b, flags); };
  auto mul = [&](Fixed64 a, Fixed64 b) { return fx::mul(a, b, flags); };
  auto div = [&](Fixed64 a, Fixed64 b) { return fx::div(a, b, flags); };

  switch (ins.op) {
    case Opcode::LDI: write_sreg(ins.d, ins.imm); break;
    case Opcode::SMOV:
      sreg_mut(ins.a);
      write_sreg(ins.d, sreg(ins.a));
      break;
    case Opcode::SLD:
      check_mem(ins.addr, 1);
      write_sreg(ins.d, state_.dmem[ins.addr]);
      scalar_latency(OpClass::Mem);
      break;
    case Opcode::SST:
      check_mem(ins.addr, 1);
      sreg_mut(ins.a);
      state_.dmem[ins.addr] = sreg(ins.a);
      scalar_latency(OpClass::Mem);
      break;
    case Opcode::SADD: scalar_binary(add); break;
    case Opcode::SSUB: scalar_binary(sub); break;
    case Opcode::SMUL: scalar_binary(mul); break;
    case Opcode::SDIV: scalar_binary(div); break;
    case Opcode::SINV:
      sreg_mut(ins.a);
      write_sreg(ins.d, fx::inv(sreg(ins.a), flags));
      scalar_latency(OpClass::Div);
      break;
    case Opcode::SADDI:
      sreg_mut(ins.a);
      write_sreg(ins.d, fx::add(sreg(ins.a), ins.imm, flags));
      scalar_latency(OpClass::Add);
      break;
    case Opcode::JMP: next_pc = ins.target; break;
    case Opcode::BZ:
      sreg_mut(ins.a);
      if (sreg(ins.a).raw() == 0) next_pc = ins.target;
      break;
    case Opcode::BNZ:
      sreg_mut(ins.a);
      if (sreg(ins.a).raw() != 0) next_pc = ins.target;
      break;
    case Opcode::HALT: state_.halted = true; break;
    case Opcode::F2X: {
      if (!cfg_.enable_converter) {
        throw ExecutionFault(describe(state_.pc, ins) + ": converter disabled", state_.pc);
      }
      sreg_mut(ins.a);
      const double x = std::bit_cast<double>(sreg(ins.a).raw());
      write_sreg(ins.d, Fixed64::from_real_saturating(x, flags));
      scalar_latency(OpClass::Convert);
      break;
    }
    case Opcode::X2F: {
      if (!cfg_.enable_converter) {
        throw ExecutionFault(describe(state_.pc, ins) + ": converter disabled", state_.pc);
      }
      sreg_mut(ins.a);
      const double x = sreg(ins.a).to_real();
      write_sreg(ins.d, Fixed64::from_raw(std::bit_cast<std::int64_t>(x)));
      scalar_latency(OpClass::Convert);
      break;
    }
    case Opcode::VLD:
    case Opcode::VST: {
      const std::uint32_t W = cfg_.vec_len;
      check_mem(ins.addr, W);
      auto reg = vreg_mut(ins.op == Opcode::VLD ? ins.d : ins.a);
      const std::uint32_t port = cfg_.port_width();
      for (std::uint32_t first = 0; first < W; first += port) {
        const std::uint32_t last = std::min(W, first + port);
        for (std::uint32_t lane = first; lane < last; ++lane) {
          if (ins.op == Opcode::VLD) {
            reg[lane] = state_.dmem[ins.addr + lane];
          } else {
            state_.dmem[ins.addr + lane] = reg[lane];
          }
        }
        state_.cycles += 1;
        state_.busy[OpClass::Mem] += last - first;
      }
      break;
    }
    case Opcode::VMOV: {
      auto dst = vreg_mut(ins.d);
      auto src = vreg_mut(ins.a);
      std::copy(src.begin(), src.end(), dst.begin());
      break;
    }
    case Opcode::VADD: vector_binary(add); break;
    case Opcode::VSUB: vector_binary(sub); break;
    case Opcode::VMUL: vector_binary(mul); break;
    case Opcode::VDIV: vector_binary(div); break;
    case Opcode::VADDS: vector_broadcast(add); break;
    case Opcode::VSUBS: vector_broadcast(sub); break;
    case Opcode::VMULS: vector_broadcast(mul); break;
    case Opcode::VDIVS: vector_broadcast(div); break;
    case Opcode::VINV: {
      auto dst = vreg_mut(ins.d);
      auto src = vreg_mut(ins.a);
      vector_waves(OpClass::Div, cfg_.n_div, cfg_.lat_div,
                   [&](std::uint32_t lane) { dst[lane] = fx::inv(src[lane], flags); });
      break;
    }
  }
  if (!state_.halted) state_.pc = next_pc;
}

ExecReport Core::report(AddressRange observe) const {
  if (observe.end < observe.begin || observe.end > state_.dmem.size()) {
    throw std::out_of_range("observe range [" + std::to_string(observe.begin) + ", " + std::to_string(observe.end) +
                            ") outside data memory");
  }
  ExecReport r;
  r.total_cycles = state_.cycles;
  r.instr_count = state_.instr_count;
  r.flags = state_.flags;
  r.halted = state_.halted;
  r.observed = observe;
  r.memory.assign(state_.dmem.begin() + observe.begin, state_.dmem.begin() + observe.end);
  for (auto cls : kAllOpClasses) {
    const auto busy = state_.busy.count(cls) ? state_.busy.at(cls) : 0;
    r.busy_cycles[cls] = busy;
    const auto units = units_in_class(cls, cfg_);
    double u = 0.0;
    if (units > 0 && state_.cycles > 0) {
      u = static_cast<double>(busy) / (static_cast<double>(state_.cycles) * units);
    }
    r.utilization[cls] = std::clamp(u, 0.0, 1.0);
  }
  return r;
}

ExecReport run(const Program& program, const CoreConfig& cfg, std::span<const DataInit> inputs,
               AddressRange observe, std::uint64_t max_cycles) {
  if (auto diags = validate(program, cfg); !diags.empty()) throw InvalidProgram(std::move(diags));
  Core core(program, cfg);
  core.load_program_data();
  core.load(inputs);
  // Fail fast on a bad observe range, before spending cycles.
  (void)core.report(observe);
  while (!core.halted()) {
    core.step();
    if (!core.halted() && core.state().cycles >= max_cycles) {
      throw NonTermination("no HALT within " + std::to_string(max_cycles) + " cycles (pc " +
                               std::to_string(core.state().pc) + ")",
                           core.report(observe));
    }
  }
  return core.report(observe);
}

}  // namespace vecsim
