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

#include "pramcheck/three_partition.hpp"

#include <algorithm>
#include <numeric>

#include "pramcheck/error.hpp"

namespace pramcheck {
namespace {

struct Solver {
  const ThreePartitionInstance& inst;
  std::vector<std::size_t> order;  // item indices by decreasing size
  std::vector<bool> used;
  Partition groups;

  std::uint64_t size(std::size_t k) const { return inst.sizes[order[k]]; }

  bool solve() {
    std::size_t i = 0;
    while (i < order.size() && used[i]) ++i;
    if (i == order.size()) return true;
    used[i] = true;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (used[j]) continue;
      // Equal sizes are interchangeable; try each value once per level.
      if (j > i + 1 && !used[j - 1] && size(j - 1) == size(j)) continue;
      if (size(i) + size(j) >= inst.bound) continue;
      used[j] = true;
      const std::uint64_t want = inst.bound - size(i) - size(j);
      for (std::size_t k = j + 1; k < order.size(); ++k) {
        if (used[k] || size(k) != want) continue;
        used[k] = true;
        groups.push_back({order[i], order[j], order[k]});
        if (solve()) return true;
        groups.pop_back();
        used[k] = false;
        break;
      }
      used[j] = false;
    }
    used[i] = false;
    return false;
  }
};

}  // namespace

std::vector<std::string> instance_violations(
    const ThreePartitionInstance& inst) {
  std::vector<std::string> out;
  if (inst.m == 0) out.push_back("m must be positive");
  if (inst.bound == 0) out.push_back("B must be positive");
  if (inst.sizes.size() != 3 * inst.m) {
    out.push_back("expected 3m = " + std::to_string(3 * inst.m) +
                  " sizes, got " + std::to_string(inst.sizes.size()));
  }
  for (std::size_t i = 0; i < inst.sizes.size(); ++i) {
    const std::uint64_t s = inst.sizes[i];
    const std::string name =
        "size #" + std::to_string(i) + " = " + std::to_string(s);
    if (4 * s <= inst.bound) out.push_back(name + " is not above B/4");
    if (2 * s >= inst.bound) out.push_back(name + " is not below B/2");
  }
  const std::uint64_t sum =
      std::accumulate(inst.sizes.begin(), inst.sizes.end(), std::uint64_t{0});
  if (sum != inst.m * inst.bound) {
    out.push_back("sizes sum to " + std::to_string(sum) + ", not mB = " +
                  std::to_string(inst.m * inst.bound));
  }
  return out;
}

void validate_instance(const ThreePartitionInstance& inst) {
  const auto problems = instance_violations(inst);
  if (problems.empty()) return;
  std::string message = "invalid 3-partition instance: ";
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (i > 0) message += "; ";
    message += problems[i];
  }
  throw Error(ErrorCode::kInvalidInstance, message);
}

std::optional<Partition> solve_3partition(const ThreePartitionInstance& inst) {
  validate_instance(inst);
  Solver solver{inst, {}, std::vector<bool>(inst.sizes.size(), false), {}};
  solver.order.resize(inst.sizes.size());
  std::iota(solver.order.begin(), solver.order.end(), 0);
  std::stable_sort(solver.order.begin(), solver.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return inst.sizes[a] > inst.sizes[b];
                   });
  if (!solver.solve()) return std::nullopt;
  for (auto& g : solver.groups) std::sort(g.begin(), g.end());
  std::sort(solver.groups.begin(), solver.groups.end());
  return solver.groups;
}

}  // namespace pramcheck
