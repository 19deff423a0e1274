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
#include <optional>
#include <string>

namespace vecsim {

// Which architecture a configuration stands for. The sequential machine is
// executed by the same simulator as a 1-1-1 vector core; the tag only
// changes resource accounting.
enum class Architecture { Vector, Sequential };

// Compile-time parameters of one core.
struct CoreConfig {
  std::uint32_t vec_len = 24;  // W, lanes per vector register
  std::uint32_t n_vregs = 16;
  std::uint32_t n_sregs = 16;

  std::uint32_t n_add = 8;
  std::uint32_t n_mul = 8;
  std::uint32_t n_div = 8;

  std::uint32_t lat_add = 1;  // cycles per wave
  std::uint32_t lat_mul = 1;
  std::uint32_t lat_div = 64;  // non-pipelined, one quotient bit per cycle
  std::uint32_t issue_cost = 2;
  std::uint32_t lat_convert = 2;

  // Lanes moved per memory wave; unset means the full vector width.
  std::optional<std::uint32_t> mem_port_width;

  bool enable_converter = true;
  std::uint32_t dmem_words = 4096;
  double clock_mhz = 100.0;

  Architecture arch = Architecture::Vector;

  std::uint32_t port_width() const { return mem_port_width.value_or(vec_len); }

  // "A-M-D", e.g. "8-8-24".
  std::string mix_label() const;

  bool operator==(const CoreConfig&) const = default;
};

}  // namespace vecsim
