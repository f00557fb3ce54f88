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

#ifndef PRAMCHECK_ORACLE_HPP_
#define PRAMCHECK_ORACLE_HPP_

#include <chrono>
#include <cstdint>
#include <optional>

#include "pramcheck/verdict.hpp"

namespace pramcheck {

struct OracleOptions {
  // Search nodes expanded before giving up.
  std::uint64_t max_states = 10'000'000;
  std::optional<std::chrono::milliseconds> time_limit;
  // Remember refuted states. Off only for cross-checking the memo.
  bool memoize = true;
  // Cut states where some value has fewer writes left than the focus's
  // remaining reads demand. Off only for cross-checking.
  bool count_bound = true;
};

struct OracleStats {
  std::uint64_t states = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t memo_entries = 0;
  // States cut by the write-count bound.
  std::uint64_t pruned = 0;
};

struct OracleRun {
  Verdict verdict;
  OracleStats stats;
};

// Depth-first search over interleavings of the focus's visible operations.
// A state is the per-process frontier plus the current value of every
// variable; a focus read whose value is current is always taken at once.
// Works for every trace variant. Exceeding the budget yields
// Outcome::kTimeout, never a verdict.
OracleRun run_oracle(const Trace& trace, ProcessId focus,
                     const OracleOptions& options = {});
Verdict oracle_verify(const Trace& trace, ProcessId focus,
                      const OracleOptions& options = {});

}  // namespace pramcheck

#endif  // PRAMCHECK_ORACLE_HPP_
