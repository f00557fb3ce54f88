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

#ifndef PRAMCHECK_TRACE_GEN_HPP_
#define PRAMCHECK_TRACE_GEN_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pramcheck/trace.hpp"

namespace pramcheck {

enum class ValuePolicy { kUnique, kDuplicate };

const char* to_string(ValuePolicy p);
std::optional<ValuePolicy> parse_value_policy(std::string_view name);

struct GenParams {
  std::size_t processes = 3;
  std::size_t vars = 2;
  std::size_t ops = 20;
  ValuePolicy policy = ValuePolicy::kUnique;
  // Chance that an emitted operation is a read, when a read is possible.
  double read_fraction = 0.5;
  // Chance of delivering one pending remote write before each operation.
  double delivery_rate = 0.5;
  // Values under the duplicate policy are drawn from [1, duplicate_range].
  Value duplicate_range = 2;
};

// Replicas that apply their own writes at once and receive every other
// writer's writes over a per-writer FIFO channel at random points. Reads
// return the local value, so the result is PRAM-consistent by construction.
// Processes are named p0.., variables x0... Deterministic in `seed`.
Trace gen_pram_trace(std::uint64_t seed, const GenParams& params);

enum class MutationKind { kSwapWriteValues, kReorderReads, kRetargetRead };

const char* to_string(MutationKind k);
std::optional<MutationKind> parse_mutation_kind(std::string_view name);

// One structural change; process and variable names are preserved. Throws
// Error(kInapplicable) when the trace offers nothing to mutate.
Trace mutate_trace(std::uint64_t seed, const Trace& trace, MutationKind kind);

}  // namespace pramcheck

#endif  // PRAMCHECK_TRACE_GEN_HPP_
