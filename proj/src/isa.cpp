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

#include "vecsim/isa.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

namespace vecsim {

namespace {

using K = OperandKind;
using F = OperandField;

constexpr std::array<OperandSlot, 2> kSdImm{{{K::SReg, F::D}, {K::Imm, F::Imm}}};
constexpr std::array<OperandSlot, 2> kSdSa{{{K::SReg, F::D}, {K::SReg, F::A}}};
constexpr std::array<OperandSlot, 2> kSdAddr{{{K::SReg, F::D}, {K::Addr, F::Addr}}};
constexpr std::array<OperandSlot, 2> kAddrSa{{{K::Addr, F::Addr}, {K::SReg, F::A}}};
constexpr std::array<OperandSlot, 3> kSdSaSb{{{K::SReg, F::D}, {K::SReg, F::A}, {K::SReg, F::B}}};
constexpr std::array<OperandSlot, 3> kSdSaImm{{{K::SReg, F::D}, {K::SReg, F::A}, {K::Imm, F::Imm}}};
constexpr std::array<OperandSlot, 1> kLabel{{{K::Label, F::Target}}};
constexpr std::array<OperandSlot, 2> kSaLabel{{{K::SReg, F::A}, {K::Label, F::Target}}};
constexpr std::array<OperandSlot, 2> kVdAddr{{{K::VReg, F::D}, {K::Addr, F::Addr}}};
constexpr std::array<OperandSlot, 2> kAddrVa{{{K::Addr, F::Addr}, {K::VReg, F::A}}};
constexpr std::array<OperandSlot, 2> kVdVa{{{K::VReg, F::D}, {K::VReg, F::A}}};
constexpr std::array<OperandSlot, 3> kVdVaVb{{{K::VReg, F::D}, {K::VReg, F::A}, {K::VReg, F::B}}};
constexpr std::array<OperandSlot, 3> kVdVaSb{{{K::VReg, F::D}, {K::VReg, F::A}, {K::SReg, F::B}}};

const std::array kOpTable = {
    OpInfo{Opcode::LDI, "LDI", OpClass::Control, false, kSdImm},
    OpInfo{Opcode::SMOV, "SMOV", OpClass::Control, false, kSdSa},
    OpInfo{Opcode::SLD, "SLD", OpClass::Mem, false, kSdAddr},
    OpInfo{Opcode::SST, "SST", OpClass::Mem, false, kAddrSa},
    OpInfo{Opcode::SADD, "SADD", OpClass::Add, false, kSdSaSb},
    OpInfo{Opcode::SSUB, "SSUB", OpClass::Add, false, kSdSaSb},
    OpInfo{Opcode::SMUL, "SMUL", OpClass::Mul, false, kSdSaSb},
    OpInfo{Opcode::SDIV, "SDIV", OpClass::Div, false, kSdSaSb},
    OpInfo{Opcode::SINV, "SINV", OpClass::Div, false, kSdSa},
    OpInfo{Opcode::SADDI, "SADDI", OpClass::Add, false, kSdSaImm},
    OpInfo{Opcode::JMP, "JMP", OpClass::Control, false, kLabel},
    OpInfo{Opcode::BZ, "BZ", OpClass::Control, false, kSaLabel},
    OpInfo{Opcode::BNZ, "BNZ", OpClass::Control, false, kSaLabel},
    OpInfo{Opcode::HALT, "HALT", OpClass::Control, false, std::span<const OperandSlot>{}},
    OpInfo{Opcode::F2X, "F2X", OpClass::Convert, false, kSdSa},
    OpInfo{Opcode::X2F, "X2F", OpClass::Convert, false, kSdSa},
    OpInfo{Opcode::VLD, "VLD", OpClass::Mem, true, kVdAddr},
    OpInfo{Opcode::VST, "VST", OpClass::Mem, true, kAddrVa},
    OpInfo{Opcode::VMOV, "VMOV", OpClass::Control, true, kVdVa},
    OpInfo{Opcode::VADD, "VADD", OpClass::Add, true, kVdVaVb},
    OpInfo{Opcode::VSUB, "VSUB", OpClass::Add, true, kVdVaVb},
    OpInfo{Opcode::VADDS, "VADDS", OpClass::Add, true, kVdVaSb},
    OpInfo{Opcode::VSUBS, "VSUBS", OpClass::Add, true, kVdVaSb},
    OpInfo{Opcode::VMUL, "VMUL", OpClass::Mul, true, kVdVaVb},
    OpInfo{Opcode::VMULS, "VMULS", OpClass::Mul, true, kVdVaSb},
    OpInfo{Opcode::VDIV, "VDIV", OpClass::Div, true, kVdVaVb},
    OpInfo{Opcode::VDIVS, "VDIVS", OpClass::Div, true, kVdVaSb},
    OpInfo{Opcode::VINV, "VINV", OpClass::Div, true, kVdVa},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = static_cast<unsigned char>(s.front());
  if (!std::isalpha(head) && head != '_' && head != '.') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_' || u == '.';
  });
}

std::optional<std::uint32_t> parse_uint(std::string_view s) {
  std::uint32_t v = 0;
  if (s.empty()) return std::nullopt;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 10);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::uint32_t> parse_register(std::string_view s, char prefix) {
  if (s.size() < 2 || std::tolower(static_cast<unsigned char>(s.front())) != prefix) return std::nullopt;
  return parse_uint(s.substr(1));
}

std::optional<std::uint32_t> parse_address(std::string_view s) {
  if (s.size() < 3 || s.front() != '[' || s.back() != ']') return std::nullopt;
  return parse_uint(trim(s.substr(1, s.size() - 2)));
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = s.find(sep);
    parts.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return parts;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',') ++j;
    if (j > i) parts.push_back(s.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::uint32_t& field_ref(Instruction& ins, OperandField f) {
  switch (f) {
    case F::D: return ins.d;
    case F::A: return ins.a;
    case F::B: return ins.b;
    case F::Addr: return ins.addr;
    case F::Target: return ins.target;
    case F::Imm: break;
  }
  throw std::logic_error("immediate is not an index field");
}

std::uint32_t field_value(const Instruction& ins, OperandField f) {
  return field_ref(const_cast<Instruction&>(ins), f);
}

struct SourceLine {
  int line;
  std::string_view mnemonic;
  std::string_view operands;
};

std::string at_line(int line) { return " at line " + std::to_string(line); }

}  // namespace

std::string_view to_string(OpClass c) {
  switch (c) {
    case OpClass::Add: return "ADD";
    case OpClass::Mul: return "MUL";
    case OpClass::Div: return "DIV";
    case OpClass::Mem: return "MEM";
    case OpClass::Control: return "CONTROL";
    case OpClass::Convert: return "CONVERT";
  }
  return "?";
}

const OpInfo& info(Opcode op) {
  const auto& entry = kOpTable[static_cast<std::size_t>(op)];
  return entry;
}

std::span<const OpInfo> all_opcodes() { return kOpTable; }

std::optional<Opcode> lookup_mnemonic(std::string_view mnemonic) {
  const auto key = upper(mnemonic);
  for (const auto& entry : kOpTable) {
    if (entry.mnemonic == key) return entry.op;
  }
  return std::nullopt;
}

std::string CoreConfig::mix_label() const {
  return std::to_string(n_add) + "-" + std::to_string(n_mul) + "-" + std::to_string(n_div);
}

bool structurally_equal(const Program& lhs, const Program& rhs) {
  return lhs.instructions == rhs.instructions && lhs.data_init == rhs.data_init;
}

std::optional<Fixed64> parse_value(std::string_view text) {
  text = trim(text);
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    std::uint64_t bits = 0;
    auto body = text.substr(2);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), bits, 16);
    if (ec != std::errc{} || ptr != body.data() + body.size()) return std::nullopt;
    return Fixed64::from_raw(std::bit_cast<std::int64_t>(bits));
  }
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(x)) return std::nullopt;
  return Fixed64::from_real(x);
}

std::string format_value(Fixed64 value) {
  const double d = value.to_real();
  ArithFlags flags;
  if (Fixed64::from_real(d, flags) == value && !flags.overflow) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), d);
    if (ec == std::errc{}) return std::string(buf.data(), ptr);
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llX",
                static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(value.raw())));
  return buf;
}

Program assemble(std::string_view source) {
  Program program;
  std::vector<SourceLine> lines;
  std::vector<std::pair<std::string, int>> pending_labels;

  // Pass 1: strip comments, bind labels to instruction indices, collect data.
  int line_no = 0;
  for (auto raw : split(source, '\n')) {
    ++line_no;
    auto text = raw;
    if (auto semi = text.find(';'); semi != std::string_view::npos) text = text.substr(0, semi);
    text = trim(text);

    while (true) {
      auto colon = text.find(':');
      if (colon == std::string_view::npos) break;
      auto name = trim(text.substr(0, colon));
      if (!is_identifier(name)) {
        throw AsmError("malformed label '" + std::string(name) + "'" + at_line(line_no), line_no);
      }
      std::string key(name);
      if (program.labels.count(key) ||
          std::any_of(pending_labels.begin(), pending_labels.end(), [&](auto& p) { return p.first == key; })) {
        throw AsmError("duplicate label '" + key + "'" + at_line(line_no), line_no);
      }
      pending_labels.emplace_back(std::move(key), line_no);
      text = trim(text.substr(colon + 1));
    }
    if (text.empty()) continue;

    auto ws = std::find_if(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    auto mnemonic = text.substr(0, static_cast<std::size_t>(ws - text.begin()));
    auto operands = trim(text.substr(mnemonic.size()));

    if (mnemonic == ".data") {
      auto fields = split_ws(operands);
      if (fields.empty()) throw AsmError(".data needs an address" + at_line(line_no), line_no);
      auto addr = parse_uint(fields[0]);
      if (!addr) {
        throw AsmError("malformed operand '" + std::string(fields[0]) + "'" + at_line(line_no), line_no);
      }
      DataInit init{*addr, {}};
      for (std::size_t i = 1; i < fields.size(); ++i) {
        auto v = parse_value(fields[i]);
        if (!v) throw AsmError("malformed operand '" + std::string(fields[i]) + "'" + at_line(line_no), line_no);
        init.values.push_back(*v);
      }
      program.data_init.push_back(std::move(init));
      continue;
    }

    if (!lookup_mnemonic(mnemonic)) {
      throw AsmError("unknown mnemonic '" + std::string(mnemonic) + "'" + at_line(line_no), line_no);
    }
    const auto index = static_cast<std::uint32_t>(lines.size());
    for (auto& [name, _] : pending_labels) program.labels.emplace(name, index);
    pending_labels.clear();
    lines.push_back({line_no, mnemonic, operands});
  }
  if (!pending_labels.empty()) {
    const auto& [name, where] = pending_labels.front();
    throw AsmError("label '" + name + "' does not precede an instruction" + at_line(where), where);
  }

  // Pass 2: encode operands and resolve label references.
  for (const auto& src : lines) {
    const auto& entry = info(*lookup_mnemonic(src.mnemonic));
    Instruction ins;
    ins.op = entry.op;
    auto operands = src.operands.empty() ? std::vector<std::string_view>{} : split(src.operands, ',');
    if (operands.size() != entry.operands.size()) {
      throw AsmError(std::string(entry.mnemonic) + " expects " + std::to_string(entry.operands.size()) +
                         " operand(s), got " + std::to_string(operands.size()) + at_line(src.line),
                     src.line);
    }
    for (std::size_t i = 0; i < operands.size(); ++i) {
      const auto slot = entry.operands[i];
      const auto text = operands[i];
      auto malformed = [&](std::string_view expected) {
        return AsmError("malformed operand '" + std::string(text) + "'" + at_line(src.line) + ": expected " +
                            std::string(expected),
                        src.line);
      };
      switch (slot.kind) {
        case K::SReg: {
          auto r = parse_register(text, 's');
          if (!r) throw malformed("scalar register");
          field_ref(ins, slot.field) = *r;
          break;
        }
        case K::VReg: {
          auto r = parse_register(text, 'v');
          if (!r) throw malformed("vector register");
          field_ref(ins, slot.field) = *r;
          break;
        }
        case K::Addr: {
          auto a = parse_address(text);
          if (!a) throw malformed("address [N]");
          ins.addr = *a;
          break;
        }
        case K::Imm: {
          auto v = parse_value(text);
          if (!v) throw malformed("immediate");
          ins.imm = *v;
          break;
        }
        case K::Label: {
          if (!is_identifier(text)) throw malformed("label");
          auto it = program.labels.find(std::string(text));
          if (it == program.labels.end()) {
            throw AsmError("unresolved label '" + std::string(text) + "'" + at_line(src.line), src.line);
          }
          ins.target = it->second;
          break;
        }
      }
    }
    program.instructions.push_back(ins);
  }
  return program;
}

namespace {

// Name used when printing a branch to `target`.
std::string target_name(const Program* program, std::uint32_t target,
                        const std::map<std::uint32_t, std::vector<std::string>>* by_index) {
  if (by_index) {
    if (auto it = by_index->find(target); it != by_index->end() && !it->second.empty()) return it->second.front();
  } else if (program) {
    for (const auto& [name, index] : program->labels) {
      if (index == target) return name;
    }
  }
  return "L" + std::to_string(target);
}

std::string format_with(const Instruction& ins, const Program* program,
                        const std::map<std::uint32_t, std::vector<std::string>>* by_index) {
  const auto& entry = info(ins.op);
  std::string out(entry.mnemonic);
  for (std::size_t i = 0; i < entry.operands.size(); ++i) {
    out += i == 0 ? " " : ", ";
    const auto slot = entry.operands[i];
    switch (slot.kind) {
      case K::SReg: out += "s" + std::to_string(field_value(ins, slot.field)); break;
      case K::VReg: out += "v" + std::to_string(field_value(ins, slot.field)); break;
      case K::Addr: out += "[" + std::to_string(ins.addr) + "]"; break;
      case K::Imm: out += format_value(ins.imm); break;
      case K::Label: out += target_name(program, ins.target, by_index); break;
    }
  }
  return out;
}

}  // namespace

std::string format_instruction(const Instruction& ins, const Program* program) {
  return format_with(ins, program, nullptr);
}

std::string disassemble(const Program& program) {
  std::map<std::uint32_t, std::vector<std::string>> by_index;
  for (const auto& [name, index] : program.labels) {
    if (index < program.size()) by_index[index].push_back(name);
  }
  for (const auto& ins : program.instructions) {
    const auto& entry = info(ins.op);
    bool branches = std::any_of(entry.operands.begin(), entry.operands.end(),
                                [](const OperandSlot& s) { return s.kind == K::Label; });
    if (!branches || by_index.count(ins.target)) continue;
    std::string name = "L" + std::to_string(ins.target);
    while (program.labels.count(name)) name += "_";
    by_index[ins.target].push_back(name);
  }

  std::ostringstream out;
  for (const auto& init : program.data_init) {
    out << ".data " << init.addr;
    for (auto v : init.values) out << ' ' << format_value(v);
    out << '\n';
  }
  for (std::size_t i = 0; i < program.size(); ++i) {
    if (auto it = by_index.find(static_cast<std::uint32_t>(i)); it != by_index.end()) {
      for (const auto& name : it->second) out << name << ":\n";
    }
    out << format_with(program[i], &program, &by_index) << '\n';
  }
  return out.str();
}

std::vector<std::string> validate(const Program& program, const CoreConfig& cfg) {
  std::vector<std::string> diags;
  const auto W = cfg.vec_len;

  if (W == 0) diags.push_back("vector length must be at least 1");
  if (cfg.port_width() == 0) diags.push_back("memory port width must be at least 1");
  if (cfg.n_sregs == 0) diags.push_back("scalar register bank must not be empty");
  if (cfg.n_vregs == 0) diags.push_back("vector register bank must not be empty");
  if (cfg.issue_cost == 0) diags.push_back("issue cost must be at least 1 cycle");
  if (cfg.lat_add == 0 || cfg.lat_mul == 0 || cfg.lat_div == 0 || cfg.lat_convert == 0) {
    diags.push_back("functional-unit latencies must be at least 1 cycle");
  }
  if (program.instructions.empty()) diags.push_back("program is empty");

  std::set<OpClass> used;
  for (std::size_t i = 0; i < program.size(); ++i) {
    const auto& ins = program[i];
    const auto& entry = info(ins.op);
    const auto where = "instruction " + std::to_string(i) + " (" + std::string(entry.mnemonic) + "): ";
    used.insert(entry.cls);

    for (const auto slot : entry.operands) {
      switch (slot.kind) {
        case K::SReg: {
          auto r = field_value(ins, slot.field);
          if (r >= cfg.n_sregs) diags.push_back(where + "scalar register index " + std::to_string(r) + " out of range");
          break;
        }
        case K::VReg: {
          auto r = field_value(ins, slot.field);
          if (r >= cfg.n_vregs) diags.push_back(where + "vector register index " + std::to_string(r) + " out of range");
          break;
        }
        case K::Addr: {
          const std::uint64_t width = entry.vector ? W : 1;
          if (ins.addr + width > cfg.dmem_words) {
            diags.push_back(where + "address " + std::to_string(ins.addr) + " + " + std::to_string(width) +
                            " words exceeds data memory of " + std::to_string(cfg.dmem_words));
          }
          break;
        }
        case K::Label:
          if (ins.target >= program.size()) {
            diags.push_back(where + "branch target " + std::to_string(ins.target) + " out of range");
          }
          break;
        case K::Imm: break;
      }
    }
    if (entry.cls == OpClass::Convert && !cfg.enable_converter) diags.push_back(where + "converter disabled");
  }

  auto check_units = [&](OpClass cls, std::uint32_t n, std::string_view name) {
    if (!used.count(cls)) return;
    if (n == 0) {
      diags.push_back("program uses " + std::string(to_string(cls)) + "-class instructions but " + std::string(name) +
                      " = 0");
    } else if (n > W && W > 0) {
      diags.push_back(std::string(name) + " = " + std::to_string(n) + " exceeds vector length " + std::to_string(W));
    }
  };
  check_units(OpClass::Add, cfg.n_add, "n_add");
  check_units(OpClass::Mul, cfg.n_mul, "n_mul");
  check_units(OpClass::Div, cfg.n_div, "n_div");

  for (const auto& init : program.data_init) {
    if (init.addr + static_cast<std::uint64_t>(init.values.size()) > cfg.dmem_words) {
      diags.push_back(".data at " + std::to_string(init.addr) + " with " + std::to_string(init.values.size()) +
                      " words exceeds data memory of " + std::to_string(cfg.dmem_words));
    }
  }
  return diags;
}

}  // namespace vecsim
