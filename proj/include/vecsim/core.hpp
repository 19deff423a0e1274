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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecsim/config.hpp"
#include "vecsim/fixed.hpp"
#include "vecsim/isa.hpp"

namespace vecsim {

// ceil(elements / units): scheduling rounds the sequencing wrapper needs.
std::uint64_t waves(std::uint64_t elements, std::uint64_t units);

// Closed-form cycle cost of one instruction under `cfg`.
std::uint64_t instr_cost(const Instruction& ins, const CoreConfig& cfg);

// Units available to a class: FU counts for arithmetic, port lanes for MEM,
// one controller for CONTROL, one converter (if instantiated) for CONVERT.
std::uint32_t units_in_class(OpClass cls, const CoreConfig& cfg);

struct MachineState {
  std::vector<Fixed64> sregs;
  std::vector<Fixed64> vregs;  // n_vregs * W, register-major
  std::vector<Fixed64> dmem;
  std::uint32_t pc = 0;
  ArithFlags flags;
  std::uint64_t cycles = 0;
  std::uint64_t instr_count = 0;
  std::map<OpClass, std::uint64_t> busy;  // unit-cycles per class
  bool halted = false;

  bool operator==(const MachineState&) const = default;
};

MachineState reset(const CoreConfig& cfg);

struct AddressRange {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;  // exclusive

  std::uint32_t size() const { return end > begin ? end - begin : 0; }
  bool operator==(const AddressRange&) const = default;
};

struct ExecReport {
  std::uint64_t total_cycles = 0;
  std::uint64_t instr_count = 0;
  std::map<OpClass, std::uint64_t> busy_cycles;
  std::map<OpClass, double> utilization;
  ArithFlags flags;
  bool halted = false;
  AddressRange observed;
  std::vector<Fixed64> memory;

  bool operator==(const ExecReport&) const = default;
};

// Raised for an out-of-range access discovered while executing.
class ExecutionFault : public std::runtime_error {
 public:
  ExecutionFault(const std::string& what, std::uint32_t pc) : std::runtime_error(what), pc_(pc) {}
  std::uint32_t pc() const { return pc_; }

 private:
  std::uint32_t pc_;
};

class NonTermination : public std::runtime_error {
 public:
  NonTermination(const std::string& what, ExecReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ExecReport& partial() const { return partial_; }

 private:
  ExecReport partial_;
};

// validate() found problems; the message lists every diagnostic.
class InvalidProgram : public std::invalid_argument {
 public:
  explicit InvalidProgram(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

// One simulation context: single-threaded, in-order, one instruction at a
// time. Vector arithmetic goes through a sequencing wrapper that runs W
// lanes in waves of K units; every access is bounds-checked at run time.
class Core {
 public:
  Core(Program program, CoreConfig cfg);

  void reset();
  // Applies the program's .data initializers.
  void load_program_data();
  void load(std::span<const DataInit> inits);
  void step();

  bool halted() const { return state_.halted; }
  const MachineState& state() const { return state_; }
  const CoreConfig& config() const { return cfg_; }
  const Program& program() const { return program_; }

  Fixed64 sreg(std::uint32_t i) const;
  std::span<const Fixed64> vreg(std::uint32_t i) const;

  ExecReport report(AddressRange observe) const;

 private:
  Fixed64& sreg_mut(std::uint32_t i);
  std::span<Fixed64> vreg_mut(std::uint32_t i);
  void write_sreg(std::uint32_t i, Fixed64 v);
  void check_mem(std::uint64_t addr, std::uint64_t width) const;

  template <typename LaneOp>
  void vector_waves(OpClass cls, std::uint32_t units, std::uint32_t latency, LaneOp&& op);

  Program program_;
  CoreConfig cfg_;
  MachineState state_;
};

// Validate, load, execute to HALT. Throws InvalidProgram, ExecutionFault,
// or NonTermination (carrying the partial report) when max_cycles passes
// without a HALT.
ExecReport run(const Program& program, const CoreConfig& cfg, std::span<const DataInit> inputs,
               AddressRange observe, std::uint64_t max_cycles = 10'000'000);

}  // namespace vecsim
