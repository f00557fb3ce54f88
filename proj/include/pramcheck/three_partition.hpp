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

#ifndef PRAMCHECK_THREE_PARTITION_HPP_
#define PRAMCHECK_THREE_PARTITION_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pramcheck {

struct ThreePartitionInstance {
  std::uint64_t m = 0;
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> sizes;
};

// Indices into `sizes`, one triple per group.
using Partition = std::vector<std::array<std::size_t, 3>>;

// Every violated condition, in a fixed order; empty for a valid instance.
std::vector<std::string> instance_violations(const ThreePartitionInstance& i);
// Throws Error(kInvalidInstance) naming every violated condition.
void validate_instance(const ThreePartitionInstance& inst);

// Exhaustive backtracking; every group has exactly three items because of
// the strict size bounds.
std::optional<Partition> solve_3partition(const ThreePartitionInstance& inst);

}  // namespace pramcheck

#endif  // PRAMCHECK_THREE_PARTITION_HPP_
