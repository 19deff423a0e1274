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

// vecsim: assemble, simulate and explore the configurable vector core.
//
// Exit status: 0 success, 1 user or input error, 2 simulation fault.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vecsim/archmodels.hpp"
#include "vecsim/core.hpp"
#include "vecsim/dse.hpp"
#include "vecsim/io.hpp"
#include "vecsim/isa.hpp"
#include "vecsim/kernelbench.hpp"

namespace {

using namespace vecsim;

constexpr int kOk = 0;
constexpr int kUserError = 1;
constexpr int kFault = 2;

io::Settings load_settings(const std::string& path) {
  return path.empty() ? io::Settings{} : io::parse_settings(io::read_file(path));
}

io::DataSet load_data(const std::string& path, std::uint32_t width) {
  return path.empty() ? io::DataSet{} : io::parse_data_csv(io::read_file(path), width);
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    io::write_file(out_path, text);
  }
}

AddressRange parse_range(const std::string& text) {
  if (text.empty()) return {};
  auto colon = text.find(':');
  if (colon == std::string::npos) throw io::FormatError("observe range must be BEGIN:END");
  try {
    std::size_t used = 0;
    auto begin = std::stoul(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument("");
    auto end_text = text.substr(colon + 1);
    auto end = std::stoul(end_text, &used);
    if (used != end_text.size() || end < begin) throw std::invalid_argument("");
    return {static_cast<std::uint32_t>(begin), static_cast<std::uint32_t>(end)};
  } catch (const std::exception&) {
    throw io::FormatError("malformed observe range '" + text + "'");
  }
}

int cmd_asm(const std::string& program_file, const std::string& config_file, bool check_only) {
  const auto settings = load_settings(config_file);
  const auto program = assemble(io::read_file(program_file));
  const auto diags = validate(program, settings.core);
  if (!check_only) {
    for (std::size_t i = 0; i < program.size(); ++i) {
      std::printf("%4zu  %s\n", i, format_instruction(program[i], &program).c_str());
    }
  }
  for (const auto& d : diags) std::cerr << program_file << ": " << d << "\n";
  return diags.empty() ? kOk : kUserError;
}

int cmd_run(const std::string& program_file, const std::string& config_file, const std::string& data_file,
            const std::string& observe, const std::string& out_file, const std::string& expected_file, double rtol) {
  const auto settings = load_settings(config_file);
  const auto program = assemble(io::read_file(program_file));
  const auto data = load_data(data_file, settings.core.vec_len);
  auto range = parse_range(observe);
  std::optional<std::vector<double>> expected;
  if (!expected_file.empty()) {
    expected = io::parse_expected_csv(io::read_file(expected_file));
    if (observe.empty()) {
      const auto out = kernel::Layout::standard(settings.core.vec_len).out;
      range = {out, out + static_cast<std::uint32_t>(expected->size())};
    }
  }

  ExecReport report;
  try {
    report = run(program, settings.core, data.inits, range, settings.max_cycles);
  } catch (const NonTermination& e) {
    std::cerr << "error: " << e.what() << "\n";
    emit(out_file, io::report_to_json(e.partial()).dump(2) + "\n");
    return kFault;
  }
  if (report.flags.overflow) std::cerr << "warning: arithmetic saturation occurred\n";
  if (report.flags.div_by_zero) std::cerr << "warning: division by zero occurred\n";
  emit(out_file, io::report_to_json(report).dump(2) + "\n");

  if (expected) {
    if (expected->size() != report.memory.size()) {
      std::cerr << "error: expected " << expected->size() << " values, observed " << report.memory.size() << "\n";
      return kUserError;
    }
    for (std::size_t i = 0; i < expected->size(); ++i) {
      const double want = (*expected)[i];
      const double got = report.memory[i].to_real();
      if (std::abs(got - want) > rtol * std::abs(want)) {
        std::cerr << "error: lane " << i << " = " << got << ", expected " << want << " (rtol " << rtol << ")\n";
        return kUserError;
      }
    }
    std::cerr << "all " << expected->size() << " values within rtol " << rtol << "\n";
  }
  return kOk;
}

int cmd_sweep(const std::string& program_file, const std::string& data_file, const std::string& config_file,
              const std::string& mix_spec, const std::string& out_csv) {
  const auto settings = load_settings(config_file);
  const auto program = assemble(io::read_file(program_file));
  const auto data = load_data(data_file, settings.core.vec_len);
  const auto mixes = dse::parse_mix_spec(mix_spec);
  const auto configs = dse::apply_mixes(settings.core, mixes);
  const auto points = dse::sweep(program, configs, settings.cal, data.inits);
  emit(out_csv, io::design_points_csv(points));
  return kOk;
}

int cmd_compare(const std::string& config_file, const std::string& data_file, const std::string& out) {
  const auto settings = load_settings(config_file);
  const auto W = settings.core.vec_len;
  auto data = load_data(data_file, W);
  double s_k = 1.0;
  if (data_file.empty()) {
    const auto inputs = kernel::generate_inputs(W, 0);
    s_k = inputs.s_k;
    data.inits = kernel::to_data(inputs, kernel::Layout::standard(W));
  } else if (data.s_k) {
    s_k = *data.s_k;
  }
  const auto cmp = dse::compare_architectures(settings.core, settings.cal, data.inits, s_k, settings.barrier_cost);
  const auto json = io::comparison_to_json(cmp);
  emit(out, json.dump(2) + "\n");
  if (!out.empty()) {
    for (const auto& p : {cmp.tiled, cmp.sequential, cmp.vector}) {
      std::printf("%-16s latency %8llu cycles  %8lld slices\n", p.label.c_str(),
                  static_cast<unsigned long long>(p.latency_cycles), static_cast<long long>(p.slices));
    }
  }
  return kOk;
}

int cmd_project(std::optional<std::uint64_t> latency, std::optional<std::int64_t> slices,
                std::optional<std::int64_t> budget, double clock, std::optional<double> fraction,
                const std::string& speedup_text, const std::string& out) {
  nlohmann::ordered_json j;
  j["schema_version"] = io::kReportSchemaVersion;
  if (latency || slices || budget) {
    if (!latency || !slices || !budget) {
      throw std::invalid_argument("throughput projection needs --latency, --slices and --budget");
    }
    const dse::DesignPoint point{"point", 0, 0, 0, *latency, *slices};
    const auto p = dse::throughput_projection(point, *budget, clock);
    j["throughput"] = {{"slices_budget", p.slices_budget},
                       {"cores", p.cores},
                       {"clock_mhz", p.clock_mhz},
                       {"calls_per_second", p.calls_per_second}};
  }
  if (fraction) {
    double speedup = dse::kUnbounded;
    if (speedup_text != "inf") {
      try {
        std::size_t used = 0;
        speedup = std::stod(speedup_text, &used);
        if (used != speedup_text.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed --speedup '" + speedup_text + "'");
      }
    }
    const double overall = dse::amdahl(*fraction, speedup);
    j["amdahl"] = {{"fraction", *fraction},
                   {"kernel_speedup", std::isinf(speedup) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(speedup)},
                   {"overall_speedup", overall}};
  }
  if (j.size() == 1) throw std::invalid_argument("nothing to project: give --fraction and/or --latency/--slices/--budget");
  emit(out, j.dump(2) + "\n");
  return kOk;
}

int cmd_kernel_gen(std::uint32_t veclen, std::uint64_t seed, const std::string& prefix) {
  if (veclen == 0) throw std::invalid_argument("vector length must be at least 1");
  const auto layout = kernel::Layout::standard(veclen);
  const auto inputs = kernel::generate_inputs(veclen, seed);
  const auto program = kernel::emit_program(veclen, layout, inputs.s_k);
  std::string asm_text = "; benchmark kernel, W = " + std::to_string(veclen) + ", seed " + std::to_string(seed) +
                         "\n; output at [" + std::to_string(layout.out) + ", " +
                         std::to_string(layout.out + veclen) + ")\n" + disassemble(program);
  io::write_file(prefix + ".asm", asm_text);
  io::write_file(prefix + ".csv", io::format_kernel_csv(inputs));
  io::write_file(prefix + ".expected.csv", io::format_expected_csv(kernel::oracle(inputs)));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cycle-accurate simulator and design-space explorer for a configurable vector core"};
  app.require_subcommand(1);

  std::string program_file, config_file, data_file, out_file, observe, mix_spec, expected_file;
  bool check_only = false;
  double rtol = 1e-6;

  auto* asm_cmd = app.add_subcommand("asm", "Assemble and validate a program, print a listing");
  asm_cmd->add_option("program", program_file, "Assembly source")->required();
  asm_cmd->add_option("-c,--config", config_file, "Core config file");
  asm_cmd->add_flag("--check", check_only, "Only report diagnostics");

  auto* run_cmd = app.add_subcommand("run", "Simulate a program to HALT and write a report");
  run_cmd->add_option("program", program_file, "Assembly source")->required();
  run_cmd->add_option("-c,--config", config_file, "Core config file");
  run_cmd->add_option("-d,--data", data_file, "CSV data file");
  run_cmd->add_option("--observe", observe, "Memory range BEGIN:END to include in the report");
  run_cmd->add_option("-o,--out", out_file, "Report path (default stdout)");
  run_cmd->add_option("--expected", expected_file, "Expected-output CSV to check the observed range against");
  run_cmd->add_option("--rtol", rtol, "Relative tolerance for --expected");

  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a program over functional-unit mixes");
  sweep_cmd->add_option("program", program_file, "Assembly source")->required();
  sweep_cmd->add_option("-d,--data", data_file, "CSV data file");
  sweep_cmd->add_option("-c,--config", config_file, "Base config file");
  sweep_cmd->add_option("-m,--mix", mix_spec, "A-M-D list or sym:N,N,...")->required();
  sweep_cmd->add_option("-o,--out", out_file, "CSV path (default stdout)");

  auto* compare_cmd = app.add_subcommand("compare", "Compare tiled, sequential and vector architectures");
  compare_cmd->add_option("-c,--config", config_file, "Vector core config file");
  compare_cmd->add_option("-d,--data", data_file, "Kernel data CSV (default: seed 0 inputs)");
  compare_cmd->add_option("-o,--out", out_file, "Report path (default stdout)");

  std::optional<std::uint64_t> latency;
  std::optional<std::int64_t> slices, budget;
  std::optional<double> fraction;
  double clock = 100.0;
  std::string speedup = "inf";
  auto* project_cmd = app.add_subcommand("project", "Multi-core throughput and whole-application speedup");
  project_cmd->add_option("--latency", latency, "Design point latency in cycles");
  project_cmd->add_option("--slices", slices, "Design point slices");
  project_cmd->add_option("--budget", budget, "Slice budget of the device");
  project_cmd->add_option("--clock", clock, "Core clock in MHz");
  project_cmd->add_option("--fraction", fraction, "Fraction of run time spent in the kernel");
  project_cmd->add_option("--speedup", speedup, "Kernel speedup, or 'inf'");
  project_cmd->add_option("-o,--out", out_file, "Report path (default stdout)");

  std::uint32_t veclen = 24;
  std::uint64_t seed = 0;
  std::string prefix;
  auto* gen_cmd = app.add_subcommand("kernel-gen", "Write the benchmark kernel program, inputs and expected outputs");
  gen_cmd->add_option("--veclen", veclen, "Vector length W");
  gen_cmd->add_option("--seed", seed, "Input seed");
  gen_cmd->add_option("-o,--out-prefix", prefix, "Writes PREFIX.asm, PREFIX.csv, PREFIX.expected.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUserError;
  }

  try {
    if (*asm_cmd) return cmd_asm(program_file, config_file, check_only);
    if (*run_cmd) return cmd_run(program_file, config_file, data_file, observe, out_file, expected_file, rtol);
    if (*sweep_cmd) return cmd_sweep(program_file, data_file, config_file, mix_spec, out_file);
    if (*compare_cmd) return cmd_compare(config_file, data_file, out_file);
    if (*project_cmd) return cmd_project(latency, slices, budget, clock, fraction, speedup, out_file);
    if (*gen_cmd) return cmd_kernel_gen(veclen, seed, prefix);
  } catch (const AsmError& e) {
    std::cerr << program_file << ": " << e.what() << "\n";
    return kUserError;
  } catch (const InvalidProgram& e) {
    for (const auto& d : e.diagnostics()) std::cerr << program_file << ": " << d << "\n";
    return kUserError;
  } catch (const ExecutionFault& e) {
    std::cerr << "fault: " << e.what() << "\n";
    return kFault;
  } catch (const NonTermination& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFault;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUserError;
  }
  return kUserError;
}
