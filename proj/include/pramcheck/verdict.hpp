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

#ifndef PRAMCHECK_VERDICT_HPP_
#define PRAMCHECK_VERDICT_HPP_

#include <optional>
#include <string>

#include "pramcheck/graph.hpp"
#include "pramcheck/legality.hpp"
#include "pramcheck/trace.hpp"

namespace pramcheck {

enum class Algorithm { kRwClosure, kReadCentric, kOracle, kAuto };

const char* to_string(Algorithm a);
// Accepts "rw-closure", "read-centric", "oracle", "auto".
std::optional<Algorithm> parse_algorithm(std::string_view name);

enum class Outcome { kConsistent, kInconsistent, kTimeout };

const char* to_string(Outcome o);

enum class Reason {
  kNone,
  kCycle,             // the operation graph has a cycle
  kNoDictatingWrite,  // some visible read matches no write
  kExhausted,         // oracle search refuted every schedule
  kBudgetExceeded,    // oracle gave up; not a verdict
};

const char* to_string(Reason r);

struct Verdict {
  Outcome outcome = Outcome::kConsistent;
  ProcessId focus{};
  Algorithm algorithm = Algorithm::kRwClosure;
  Reason reason = Reason::kNone;
  // Present iff consistent.
  Schedule witness;
  // Present for graph-based rejections.
  std::optional<Cycle> cycle;
  // Offending read for kNoDictatingWrite.
  OpIndex culprit = kNoOp;

  bool consistent() const { return outcome == Outcome::kConsistent; }
};

}  // namespace pramcheck

#endif  // PRAMCHECK_VERDICT_HPP_
