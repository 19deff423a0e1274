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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vecsim/config.hpp"
#include "vecsim/fixed.hpp"

namespace vecsim {

enum class OpClass { Add, Mul, Div, Mem, Control, Convert };

inline constexpr OpClass kAllOpClasses[] = {OpClass::Add, OpClass::Mul,     OpClass::Div,
                                            OpClass::Mem, OpClass::Control, OpClass::Convert};

std::string_view to_string(OpClass c);

enum class Opcode {
  // scalar
  LDI, SMOV, SLD, SST, SADD, SSUB, SMUL, SDIV, SINV, SADDI,
  // control
  JMP, BZ, BNZ, HALT,
  // float <-> fixed conversion
  F2X, X2F,
  // vector
  VLD, VST, VMOV, VADD, VSUB, VADDS, VSUBS, VMUL, VMULS, VDIV, VDIVS, VINV,
};

// Kind and destination field of one textual operand.
enum class OperandKind { SReg, VReg, Addr, Imm, Label };
enum class OperandField { D, A, B, Addr, Imm, Target };

struct OperandSlot {
  OperandKind kind;
  OperandField field;
};

struct OpInfo {
  Opcode op;
  std::string_view mnemonic;
  OpClass cls;
  bool vector;  // operates on all W lanes
  std::span<const OperandSlot> operands;
};

const OpInfo& info(Opcode op);
std::span<const OpInfo> all_opcodes();
std::optional<Opcode> lookup_mnemonic(std::string_view mnemonic);

inline OpClass op_class(Opcode op) { return info(op).cls; }

// Fields not used by an opcode stay zero so that structural equality is
// well defined.
struct Instruction {
  Opcode op = Opcode::HALT;
  std::uint32_t d = 0;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t addr = 0;
  Fixed64 imm{};
  std::uint32_t target = 0;  // resolved instruction index for JMP/BZ/BNZ

  bool operator==(const Instruction&) const = default;
};

struct DataInit {
  std::uint32_t addr = 0;
  std::vector<Fixed64> values;

  bool operator==(const DataInit&) const = default;
};

struct Program {
  std::vector<Instruction> instructions;
  std::map<std::string, std::uint32_t> labels;
  std::vector<DataInit> data_init;

  std::size_t size() const { return instructions.size(); }
  const Instruction& operator[](std::size_t i) const { return instructions[i]; }
};

// Structural identity: instruction stream and data initializers. Label
// names are symbolic and do not take part.
bool structurally_equal(const Program& lhs, const Program& rhs);

class AsmError : public std::runtime_error {
 public:
  AsmError(const std::string& what, int line) : std::runtime_error(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Two-pass assembler. Throws AsmError carrying the 1-based source line.
Program assemble(std::string_view source);

std::string disassemble(const Program& program);
std::string format_instruction(const Instruction& ins, const Program* program = nullptr);

// Empty result means the program is legal for the configuration.
std::vector<std::string> validate(const Program& program, const CoreConfig& cfg);

// Decimal text that parses back to exactly `value`, or a 0x raw literal
// when no double holds the value exactly.
std::string format_value(Fixed64 value);
// Decimal real (via from_real) or 0x-prefixed raw word.
std::optional<Fixed64> parse_value(std::string_view text);

}  // namespace vecsim
