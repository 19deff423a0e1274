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

#include "vecsim/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace vecsim::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  while (true) {
    auto pos = s.find(sep);
    parts.push_back(trim(s.substr(0, pos)));
    if (pos == std::string_view::npos) return parts;
    s.remove_prefix(pos + 1);
  }
}

std::vector<std::string_view> lines_of(std::string_view text) {
  auto lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

template <typename T>
T parse_number(std::string_view s, std::string_view key) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw FormatError("bad value '" + std::string(s) + "' for key '" + std::string(key) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(v)) throw FormatError("non-finite value for key '" + std::string(key) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s, std::string_view key) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw FormatError("bad boolean '" + std::string(s) + "' for key '" + std::string(key) + "'");
}

struct Field {
  std::function<void(Settings&, std::string_view)> set;
  std::function<std::string(const Settings&)> get;
};

template <typename T>
Field uint_field(T CoreConfig::*member, std::string_view key) {
  return {[member, key](Settings& s, std::string_view v) { s.core.*member = parse_number<T>(v, key); },
          [member](const Settings& s) { return std::to_string(s.core.*member); }};
}

Field cal_field(double Calibration::*member, std::string_view key) {
  return {[member, key](Settings& s, std::string_view v) {
            const double x = parse_number<double>(v, key);
            if (x < 0) throw FormatError("calibration coefficient '" + std::string(key) + "' must be non-negative");
            s.cal.*member = x;
          },
          [member](const Settings& s) { return format_real(s.cal.*member); }};
}

// Ordered as written by format_settings.
const std::vector<std::pair<std::string_view, Field>>& fields() {
  static const std::vector<std::pair<std::string_view, Field>> table = {
      {"vec_len", uint_field(&CoreConfig::vec_len, "vec_len")},
      {"n_vregs", uint_field(&CoreConfig::n_vregs, "n_vregs")},
      {"n_sregs", uint_field(&CoreConfig::n_sregs, "n_sregs")},
      {"n_add", uint_field(&CoreConfig::n_add, "n_add")},
      {"n_mul", uint_field(&CoreConfig::n_mul, "n_mul")},
      {"n_div", uint_field(&CoreConfig::n_div, "n_div")},
      {"lat_add", uint_field(&CoreConfig::lat_add, "lat_add")},
      {"lat_mul", uint_field(&CoreConfig::lat_mul, "lat_mul")},
      {"lat_div", uint_field(&CoreConfig::lat_div, "lat_div")},
      {"issue_cost", uint_field(&CoreConfig::issue_cost, "issue_cost")},
      {"lat_convert", uint_field(&CoreConfig::lat_convert, "lat_convert")},
      {"mem_port_width",
       {[](Settings& s, std::string_view v) {
          if (v == "auto") {
            s.core.mem_port_width.reset();
          } else {
            s.core.mem_port_width = parse_number<std::uint32_t>(v, "mem_port_width");
          }
        },
        [](const Settings& s) {
          return s.core.mem_port_width ? std::to_string(*s.core.mem_port_width) : std::string("auto");
        }}},
      {"enable_converter",
       {[](Settings& s, std::string_view v) { s.core.enable_converter = parse_bool(v, "enable_converter"); },
        [](const Settings& s) { return std::string(s.core.enable_converter ? "true" : "false"); }}},
      {"dmem_words", uint_field(&CoreConfig::dmem_words, "dmem_words")},
      {"clock_mhz",
       {[](Settings& s, std::string_view v) {
          s.core.clock_mhz = parse_number<double>(v, "clock_mhz");
          if (!(s.core.clock_mhz > 0)) throw FormatError("clock_mhz must be positive");
        },
        [](const Settings& s) { return format_real(s.core.clock_mhz); }}},
      {"max_cycles",
       {[](Settings& s, std::string_view v) { s.max_cycles = parse_number<std::uint64_t>(v, "max_cycles"); },
        [](const Settings& s) { return std::to_string(s.max_cycles); }}},
      {"barrier_cost",
       {[](Settings& s, std::string_view v) { s.barrier_cost = parse_number<std::uint32_t>(v, "barrier_cost"); },
        [](const Settings& s) { return std::to_string(s.barrier_cost); }}},
      {"c_add", cal_field(&Calibration::c_add, "c_add")},
      {"c_mul", cal_field(&Calibration::c_mul, "c_mul")},
      {"c_div", cal_field(&Calibration::c_div, "c_div")},
      {"c_convert", cal_field(&Calibration::c_convert, "c_convert")},
      {"base_vector", cal_field(&Calibration::base_vector, "base_vector")},
      {"base_seq", cal_field(&Calibration::base_seq, "base_seq")},
      {"c_tiled_barrier", cal_field(&Calibration::c_tiled_barrier, "c_tiled_barrier")},
  };
  return table;
}

}  // namespace

std::string format_real(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

Settings parse_settings(std::string_view text) {
  Settings s;
  int line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto& table = fields();
    auto it = std::find_if(table.begin(), table.end(), [&](const auto& kv) { return kv.first == key; });
    if (it == table.end()) {
      throw FormatError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    try {
      it->second.set(s, value);
    } catch (const FormatError& e) {
      throw FormatError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return s;
}

std::string format_settings(const Settings& settings) {
  std::string out;
  for (const auto& [key, field] : fields()) {
    out += std::string(key) + " = " + field.get(settings) + "\n";
  }
  return out;
}

DataSet parse_data_csv(std::string_view text, std::uint32_t width) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw FormatError("data file is empty");
  const auto header = split(lines[0], ',');
  const auto layout = kernel::Layout::standard(width);

  DataSet data;
  std::vector<bool> is_sk(header.size(), false);
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto name = header[c];
    std::uint32_t addr = 0;
    if (!name.empty() && name.front() == '@') {
      addr = parse_number<std::uint32_t>(name.substr(1), "column address");
    } else if (auto a = layout.address_of(name)) {
      addr = *a;
      is_sk[c] = name == "s_k";
    } else {
      throw FormatError("data header: unknown column '" + std::string(name) + "'");
    }
    data.inits.push_back({addr, {}});
  }

  std::vector<bool> ended(header.size(), false);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const auto cells = split(lines[r], ',');
    if (cells.size() > header.size()) {
      throw FormatError("data row " + std::to_string(r) + " has more cells than the header");
    }
    for (std::size_t c = 0; c < header.size(); ++c) {
      const auto cell = c < cells.size() ? cells[c] : std::string_view{};
      if (cell.empty()) {
        ended[c] = true;
        continue;
      }
      if (ended[c]) {
        throw FormatError("data row " + std::to_string(r) + ": column '" + std::string(header[c]) + "' has a gap");
      }
      auto v = parse_value(cell);
      if (!v) {
        throw FormatError("data row " + std::to_string(r) + ": bad value '" + std::string(cell) + "'");
      }
      if (is_sk[c]) {
        if (r != 1) throw FormatError("s_k must be a single-row column");
        data.s_k = parse_number<double>(cell, "s_k");
      }
      data.inits[c].values.push_back(*v);
    }
  }
  return data;
}

std::string format_kernel_csv(const kernel::Inputs& inputs) {
  std::string out;
  for (auto name : kernel::kInputNames) out += std::string(name) + ",";
  out += "s_k\n";
  for (std::uint32_t lane = 0; lane < inputs.width; ++lane) {
    for (const auto& v : inputs.vectors) out += format_real(v[lane]) + ",";
    if (lane == 0) out += format_real(inputs.s_k);
    out += "\n";
  }
  return out;
}

std::string format_expected_csv(const std::vector<double>& expected) {
  std::string out = "lane,expected\n";
  for (std::size_t i = 0; i < expected.size(); ++i) out += std::to_string(i) + "," + format_real(expected[i]) + "\n";
  return out;
}

std::vector<double> parse_expected_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines[0] != "lane,expected") throw FormatError("expected-output file lacks its header");
  std::vector<double> values;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto cells = split(lines[r], ',');
    if (cells.size() != 2) throw FormatError("expected-output row " + std::to_string(r) + " is malformed");
    values.push_back(parse_number<double>(cells[1], "expected"));
  }
  return values;
}

nlohmann::ordered_json report_to_json(const ExecReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["halted"] = report.halted;
  j["total_cycles"] = report.total_cycles;
  j["instr_count"] = report.instr_count;
  auto& busy = j["busy_cycles"];
  auto& util = j["utilization"];
  for (auto cls : kAllOpClasses) {
    const std::string key(to_string(cls));
    busy[key] = report.busy_cycles.count(cls) ? report.busy_cycles.at(cls) : 0;
    util[key] = report.utilization.count(cls) ? report.utilization.at(cls) : 0.0;
  }
  j["flags"] = {{"overflow", report.flags.overflow}, {"div_by_zero", report.flags.div_by_zero}};
  auto values = nlohmann::ordered_json::array();
  auto raws = nlohmann::ordered_json::array();
  for (auto v : report.memory) {
    values.push_back(v.to_real());
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%016llX", static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(v.raw())));
    raws.push_back(buf);
  }
  j["observed"] = {{"begin", report.observed.begin}, {"end", report.observed.end}, {"values", values}, {"raw", raws}};
  return j;
}

std::string design_points_csv(const std::vector<dse::DesignPoint>& points) {
  const auto mask = dse::pareto_mask(points);
  std::string out = "label,n_add,n_mul,n_div,latency_cycles,slices,on_pareto\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    out += p.label + "," + std::to_string(p.n_add) + "," + std::to_string(p.n_mul) + "," + std::to_string(p.n_div) +
           "," + std::to_string(p.latency_cycles) + "," + std::to_string(p.slices) + "," + (mask[i] ? "1" : "0") + "\n";
  }
  return out;
}

nlohmann::ordered_json comparison_to_json(const dse::ArchitectureComparison& cmp) {
  auto row = [](const dse::DesignPoint& p) {
    return nlohmann::ordered_json{{"label", p.label}, {"latency_cycles", p.latency_cycles}, {"slices", p.slices}};
  };
  auto ratio = [](double num, double den) { return num / den; };
  const auto& t = cmp.tiled;
  const auto& s = cmp.sequential;
  const auto& v = cmp.vector;
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["architectures"] = {row(t), row(s), row(v)};
  j["ratios"] = {
      {"latency_sequential_over_vector", ratio(static_cast<double>(s.latency_cycles), static_cast<double>(v.latency_cycles))},
      {"slices_vector_over_sequential", ratio(static_cast<double>(v.slices), static_cast<double>(s.slices))},
      {"latency_sequential_over_tiled", ratio(static_cast<double>(s.latency_cycles), static_cast<double>(t.latency_cycles))},
      {"slices_tiled_over_sequential", ratio(static_cast<double>(t.slices), static_cast<double>(s.slices))},
      {"latency_vector_over_tiled", ratio(static_cast<double>(v.latency_cycles), static_cast<double>(t.latency_cycles))},
      {"slices_tiled_over_vector", ratio(static_cast<double>(t.slices), static_cast<double>(v.slices))},
  };
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace vecsim::io
