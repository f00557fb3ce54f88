/*
Copyright 2026 The pramcheck Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

// Test-side reference implementations. They share only the Trace container
// with the library and re-derive everything else naively.

#ifndef PRAMCHECK_TESTS_SUPPORT_REFERENCE_HPP_
#define PRAMCHECK_TESTS_SUPPORT_REFERENCE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pramcheck/trace.hpp"

namespace reference {

using pramcheck::OpIndex;
using pramcheck::ProcessId;
using pramcheck::Trace;

// Operations the focus can observe: every write and its own reads, split
// into per-process queues in program order.
inline std::vector<std::vector<OpIndex>> visible_queues(const Trace& t,
                                                        ProcessId focus) {
  std::vector<std::vector<OpIndex>> q(t.process_count());
  for (const auto& op : t.operations()) {
    if (op.is_write() || op.process == focus) {
      q[pramcheck::raw(op.process)].push_back(op.index);
    }
  }
  return q;
}

// Plain DFS over all program-order interleavings; a read may be scheduled
// only when the variable's current value equals its value. Returns the
// first schedule found. Exponential: keep traces tiny.
inline std::optional<std::vector<OpIndex>> brute_force_witness(
    const Trace& t, ProcessId focus) {
  const auto queues = visible_queues(t, focus);
  std::size_t total = 0;
  for (const auto& q : queues) total += q.size();
  std::vector<std::size_t> pos(queues.size(), 0);
  std::map<std::uint32_t, std::int64_t> current;
  std::vector<OpIndex> sched;

  auto dfs = [&](auto&& self) -> bool {
    if (sched.size() == total) return true;
    for (std::size_t p = 0; p < queues.size(); ++p) {
      if (pos[p] == queues[p].size()) continue;
      const auto& op = t.op(queues[p][pos[p]]);
      const std::uint32_t var = pramcheck::raw(op.variable);
      if (op.is_read()) {
        auto it = current.find(var);
        if (it == current.end() || it->second != op.value) continue;
        ++pos[p];
        sched.push_back(op.index);
        if (self(self)) return true;
        sched.pop_back();
        --pos[p];
      } else {
        auto it = current.find(var);
        const std::optional<std::int64_t> saved =
            it == current.end() ? std::nullopt
                                : std::optional<std::int64_t>(it->second);
        current[var] = op.value;
        ++pos[p];
        sched.push_back(op.index);
        if (self(self)) return true;
        sched.pop_back();
        --pos[p];
        if (saved) {
          current[var] = *saved;
        } else {
          current.erase(var);
        }
      }
    }
    return false;
  };
  if (dfs(dfs)) return sched;
  return std::nullopt;
}

// Reachability by DFS from every node over an adjacency list.
inline std::vector<std::vector<bool>> dfs_reach(
    const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj[u]) {
        if (!reach[s][v]) {
          reach[s][v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return reach;
}

// Uniform random unique-value trace: each write gets the next value of its
// variable; each read picks an existing value of its variable or, rarely,
// one nobody wrote.
inline Trace random_unique_trace(std::mt19937_64& rng, std::size_t processes,
                                 std::size_t vars, std::size_t ops) {
  Trace t;
  for (std::size_t p = 0; p < processes; ++p) {
    t.add_process("p" + std::to_string(p));
  }
  std::vector<std::int64_t> next(vars, 1);
  for (std::size_t i = 0; i < ops; ++i) {
    const std::string proc = "p" + std::to_string(rng() % processes);
    const std::size_t v = rng() % vars;
    const std::string var = "x" + std::to_string(v);
    if (rng() % 2 == 0 || next[v] == 1) {
      t.append(proc, pramcheck::OpKind::kWrite, var, next[v]++);
    } else {
      const std::int64_t value =
          rng() % 16 == 0 ? next[v] + 5
                          : 1 + static_cast<std::int64_t>(rng() % (next[v] - 1));
      t.append(proc, pramcheck::OpKind::kRead, var, value);
    }
  }
  return t;
}

}  // namespace reference

#endif  // PRAMCHECK_TESTS_SUPPORT_REFERENCE_HPP_
