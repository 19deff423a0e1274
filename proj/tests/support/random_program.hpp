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

// Generator of random programs that pass validate() for a given config and
// always terminate: straight-line blocks with forward branches, and counted
// loops whose counter register the loop body never writes.

#include <random>
#include <string>
#include <vector>

#include "vecsim/config.hpp"
#include "vecsim/isa.hpp"

namespace testing_support {

using namespace vecsim;

class ProgramGenerator {
 public:
  ProgramGenerator(CoreConfig cfg, std::uint64_t seed) : cfg_(std::move(cfg)), rng_(seed) {}

  Program generate() {
    Program p;
    auto& code = p.instructions;
    const auto n_init = below(3);
    for (std::uint32_t i = 0; i < n_init; ++i) {
      const auto len = 1 + below(cfg_.vec_len);
      DataInit init{below(cfg_.dmem_words - len + 1), {}};
      for (std::uint32_t k = 0; k < len; ++k) init.values.push_back(value());
      p.data_init.push_back(std::move(init));
    }
    // Seed a few registers so arithmetic is not all on zeros.
    for (std::uint32_t r = 1; r < counter(); ++r) {
      if (below(2)) code.push_back(ldi(r));
    }

    const auto segments = 1 + below(4);
    std::vector<std::size_t> forward_branches;
    for (std::uint32_t s = 0; s < segments; ++s) {
      if (below(3) == 0) {
        // counted loop
        Instruction init = ldi(counter());
        init.imm = Fixed64::from_real(1 + below(3));
        code.push_back(init);
        const auto top = static_cast<std::uint32_t>(code.size());
        const auto body = 1 + below(5);
        for (std::uint32_t i = 0; i < body; ++i) code.push_back(straight());
        Instruction dec;
        dec.op = Opcode::SADDI;
        dec.d = dec.a = counter();
        dec.imm = Fixed64::from_real(-1.0);
        code.push_back(dec);
        Instruction back;
        back.op = Opcode::BNZ;
        back.a = counter();
        back.target = top;
        code.push_back(back);
        if (below(2)) p.labels["loop" + std::to_string(s)] = top;
      } else {
        const auto start = code.size();
        const auto len = 2 + below(10);
        for (std::uint32_t i = 0; i < len; ++i) {
          if (below(6) == 0) {
            Instruction br;
            const auto kind = below(3);
            br.op = kind == 0 ? Opcode::JMP : (kind == 1 ? Opcode::BZ : Opcode::BNZ);
            if (br.op != Opcode::JMP) br.a = below(cfg_.n_sregs);
            forward_branches.push_back(code.size());
            code.push_back(br);
          } else {
            code.push_back(straight());
          }
        }
        // Forward targets stay inside this block or land right after it.
        const auto end = code.size();
        for (auto at : forward_branches) {
          if (at < start) continue;
          code[at].target = static_cast<std::uint32_t>(at + 1 + below(static_cast<std::uint32_t>(end - at)));
        }
        forward_branches.clear();
      }
    }
    Instruction halt;
    halt.op = Opcode::HALT;
    code.push_back(halt);
    return p;
  }

  std::uint32_t below(std::uint32_t n) { return n == 0 ? 0 : static_cast<std::uint32_t>(rng_() % n); }

 private:
  std::uint32_t counter() const { return cfg_.n_sregs - 1; }

  Fixed64 value() {
    switch (below(4)) {
      case 0: return Fixed64::from_raw(static_cast<std::int64_t>(rng_()));
      case 1: return Fixed64::zero();
      default: return Fixed64::from_real((static_cast<double>(below(20001)) - 10000.0) / 1000.0);
    }
  }

  Instruction ldi(std::uint32_t r) {
    Instruction ins;
    ins.op = Opcode::LDI;
    ins.d = r;
    ins.imm = value();
    return ins;
  }

  // Destination scalar registers exclude the loop counter.
  std::uint32_t sdst() { return below(counter()); }
  std::uint32_t sreg() { return below(cfg_.n_sregs); }
  std::uint32_t vreg() { return below(cfg_.n_vregs); }

  Instruction straight() {
    static const std::vector<Opcode> kPool = {
        Opcode::LDI,  Opcode::SMOV,  Opcode::SLD,   Opcode::SST,  Opcode::SADD,  Opcode::SSUB,  Opcode::SMUL,
        Opcode::SDIV, Opcode::SINV,  Opcode::SADDI, Opcode::VLD,  Opcode::VST,   Opcode::VMOV,  Opcode::VADD,
        Opcode::VSUB, Opcode::VADDS, Opcode::VSUBS, Opcode::VMUL, Opcode::VMULS, Opcode::VDIV,  Opcode::VDIVS,
        Opcode::VINV, Opcode::F2X,   Opcode::X2F};
    Opcode op;
    do {
      op = kPool[below(static_cast<std::uint32_t>(kPool.size()))];
    } while (op_class(op) == OpClass::Convert && !cfg_.enable_converter);

    Instruction ins;
    ins.op = op;
    const auto& entry = info(op);
    for (const auto& slot : entry.operands) {
      switch (slot.kind) {
        case OperandKind::SReg:
          (slot.field == OperandField::D ? ins.d : slot.field == OperandField::A ? ins.a : ins.b) =
              slot.field == OperandField::D ? sdst() : sreg();
          break;
        case OperandKind::VReg:
          (slot.field == OperandField::D ? ins.d : slot.field == OperandField::A ? ins.a : ins.b) = vreg();
          break;
        case OperandKind::Addr:
          ins.addr = entry.vector ? below(cfg_.dmem_words - cfg_.vec_len + 1) : below(cfg_.dmem_words);
          break;
        case OperandKind::Imm: ins.imm = value(); break;
        case OperandKind::Label: break;
      }
    }
    return ins;
  }

  CoreConfig cfg_;
  std::mt19937_64 rng_;
};

}  // namespace testing_support
