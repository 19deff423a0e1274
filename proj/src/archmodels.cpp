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

#include "vecsim/archmodels.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace vecsim {

std::map<OpClass, std::uint32_t> DataflowKernel::op_counts() const {
  std::map<OpClass, std::uint32_t> counts;
  for (const auto& n : nodes) ++counts[n.cls];
  return counts;
}

std::uint64_t node_latency(OpClass cls, const CoreConfig& cfg) {
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

namespace {

struct Longest {
  std::vector<std::uint64_t> finish;  // by node position
  std::vector<std::ptrdiff_t> pred;
};

// Kahn's algorithm; relaxes finish times in topological order.
Longest solve(const DataflowKernel& k, const CoreConfig& cfg) {
  const auto n = k.nodes.size();
  std::unordered_map<std::uint32_t, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) {
    if (!pos.emplace(k.nodes[i].id, i).second) {
      throw std::invalid_argument("duplicate node id " + std::to_string(k.nodes[i].id));
    }
  }
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (auto [from, to] : k.edges) {
    auto f = pos.find(from);
    auto t = pos.find(to);
    if (f == pos.end() || t == pos.end()) throw std::invalid_argument("edge references an unknown node");
    succ[f->second].push_back(t->second);
    ++indegree[t->second];
  }

  Longest out{std::vector<std::uint64_t>(n, 0), std::vector<std::ptrdiff_t>(n, -1)};
  std::vector<std::uint64_t> start(n, 0);
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    const auto u = ready.front();
    ready.pop_front();
    ++visited;
    out.finish[u] = start[u] + node_latency(k.nodes[u].cls, cfg);
    for (auto v : succ[u]) {
      if (out.pred[v] < 0 || out.finish[u] > start[v]) {
        start[v] = out.finish[u];
        out.pred[v] = static_cast<std::ptrdiff_t>(u);
      }
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  if (visited != n) throw CyclicGraph("dataflow graph contains a cycle");
  return out;
}

}  // namespace

std::uint64_t longest_path(const DataflowKernel& k, const CoreConfig& cfg) {
  const auto s = solve(k, cfg);
  return s.finish.empty() ? 0 : *std::max_element(s.finish.begin(), s.finish.end());
}

std::vector<std::uint32_t> critical_path(const DataflowKernel& k, const CoreConfig& cfg) {
  const auto s = solve(k, cfg);
  if (s.finish.empty()) return {};
  auto at = static_cast<std::ptrdiff_t>(std::max_element(s.finish.begin(), s.finish.end()) - s.finish.begin());
  std::vector<std::uint32_t> path;
  for (; at >= 0; at = s.pred[static_cast<std::size_t>(at)]) path.push_back(k.nodes[static_cast<std::size_t>(at)].id);
  std::reverse(path.begin(), path.end());
  return path;
}

std::uint64_t tiled_latency(const DataflowKernel& k, const CoreConfig& cfg, std::uint32_t barrier_cost) {
  return longest_path(k, cfg) + barrier_cost;
}

std::uint64_t sequential_latency(const DataflowKernel& k, const CoreConfig& cfg) {
  (void)longest_path(k, cfg);  // rejects cyclic graphs
  std::uint64_t total = 0;
  for (const auto& n : k.nodes) total += cfg.issue_cost + static_cast<std::uint64_t>(k.replication) * node_latency(n.cls, cfg);
  return total;
}

CoreConfig sequential_config(const CoreConfig& base) {
  CoreConfig cfg = base;
  cfg.n_add = cfg.n_mul = cfg.n_div = 1;
  cfg.arch = Architecture::Sequential;
  return cfg;
}

}  // namespace vecsim
