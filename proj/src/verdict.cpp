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

#include "pramcheck/verdict.hpp"

namespace pramcheck {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kRwClosure: return "rw-closure";
    case Algorithm::kReadCentric: return "read-centric";
    case Algorithm::kOracle: return "oracle";
    case Algorithm::kAuto: return "auto";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kRwClosure, Algorithm::kReadCentric,
                      Algorithm::kOracle, Algorithm::kAuto}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kConsistent: return "consistent";
    case Outcome::kInconsistent: return "inconsistent";
    case Outcome::kTimeout: return "timeout";
  }
  return "?";
}

const char* to_string(Reason r) {
  switch (r) {
    case Reason::kNone: return "none";
    case Reason::kCycle: return "cycle";
    case Reason::kNoDictatingWrite: return "no-dictating-write";
    case Reason::kExhausted: return "exhausted";
    case Reason::kBudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

}  // namespace pramcheck
