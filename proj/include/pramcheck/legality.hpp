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

#ifndef PRAMCHECK_LEGALITY_HPP_
#define PRAMCHECK_LEGALITY_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pramcheck/trace.hpp"

namespace pramcheck {

// A total order over a set of operations, earliest first.
using Schedule = std::vector<OpIndex>;
using OrderPair = std::pair<OpIndex, OpIndex>;

// Outcome of a schedule check. On failure `reason` names the first violated
// constraint and `culprit` the operation at which it was found.
struct CheckResult {
  bool ok = true;
  std::string reason;
  OpIndex culprit = kNoOp;

  explicit operator bool() const { return ok; }
  static CheckResult failure(std::string why, OpIndex at = kNoOp) {
    return CheckResult{false, std::move(why), at};
  }
};

// Every read must have a preceding write on its variable, and the latest
// such write must carry the read's value. Operations outside `sched` are
// ignored; duplicates or out-of-range indices throw kNotAPermutation.
CheckResult check_legal(const Trace& trace, std::span<const OpIndex> sched);

// Throws kNotAPermutation unless `sched` is a permutation of `ops`.
bool is_legal(const Trace& trace, std::span<const OpIndex> sched,
              std::span<const OpIndex> ops);

bool respects(std::span<const OpIndex> sched,
              std::span<const OrderPair> order);

// Consecutive pairs of each process history restricted to `ops`.
std::vector<OrderPair> program_order_pairs(const Trace& trace,
                                           std::span<const OpIndex> ops);

// (latest preceding same-variable write, read) for each read in `sched`
// that has one. Coincides with the unique dictating write on unique-value
// traces.
std::vector<OrderPair> schedule_write_to_pairs(const Trace& trace,
                                               std::span<const OpIndex> sched);

// Certificate check: permutation of the focus's visible operations, legal,
// and respecting program order and the schedule-induced write-to order.
CheckResult check_pram_witness(const Trace& trace, ProcessId focus,
                               std::span<const OpIndex> sched);

// One operation index per line; '#' comments and blank lines are skipped.
Schedule parse_schedule(std::string_view text);
std::string serialize_schedule(std::span<const OpIndex> sched);

}  // namespace pramcheck

#endif  // PRAMCHECK_LEGALITY_HPP_
