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
#include <stdexcept>
#include <utility>
#include <vector>

#include "vecsim/config.hpp"
#include "vecsim/isa.hpp"

namespace vecsim {

// Dependency graph of one loop iteration, as laid out by the fully tiled
// circuit: one hardware unit per node, replicated `replication` times.
struct DataflowKernel {
  struct Node {
    std::uint32_t id;
    OpClass cls;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // producer -> consumer, by node id
  std::uint32_t replication = 24;

  std::map<OpClass, std::uint32_t> op_counts() const;
};

class CyclicGraph : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct LatencyResource {
  std::uint64_t latency_cycles = 0;
  std::uint64_t slices = 0;
};

// Per-node latency when executed by a dedicated unit.
std::uint64_t node_latency(OpClass cls, const CoreConfig& cfg);

// Heaviest source-to-sink path, node-weighted by class latency.
std::uint64_t longest_path(const DataflowKernel& k, const CoreConfig& cfg);

// Node ids along one heaviest path.
std::vector<std::uint32_t> critical_path(const DataflowKernel& k, const CoreConfig& cfg);

// Fully tiled circuit: critical path plus the synchronisation barrier. No
// issue cost; replicas run side by side.
std::uint64_t tiled_latency(const DataflowKernel& k, const CoreConfig& cfg, std::uint32_t barrier_cost = 1);

// The same graph issued node by node as vector instructions of length
// `replication` on one unit per class (arithmetic only, no memory traffic).
std::uint64_t sequential_latency(const DataflowKernel& k, const CoreConfig& cfg);

// One unit per class, tagged for sequential-architecture resource accounting.
CoreConfig sequential_config(const CoreConfig& base);

}  // namespace vecsim
