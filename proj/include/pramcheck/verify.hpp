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

#ifndef PRAMCHECK_VERIFY_HPP_
#define PRAMCHECK_VERIFY_HPP_

#include <string>
#include <vector>

#include "pramcheck/oracle.hpp"
#include "pramcheck/verdict.hpp"

namespace pramcheck {

struct VerifyOptions {
  Algorithm algorithm = Algorithm::kAuto;
  OracleOptions oracle;
  bool debug_structures = false;
  // Fill VerifyResult::graph_dump with the final operation graph.
  bool dump_graph = false;
};

struct VerifyResult {
  Verdict verdict;
  // Empty for the oracle, which builds no graph.
  std::string graph_dump;
};

// kAuto picks read-centric for unique-value traces and the oracle
// otherwise. Throws Error(kDuplicateValue) when a graph algorithm is asked
// for on a duplicate-value trace.
Algorithm resolve_algorithm(const Trace& trace, Algorithm requested);

VerifyResult verify(const Trace& trace, ProcessId focus,
                    const VerifyOptions& options = {});

// One result per process, in process order.
std::vector<VerifyResult> verify_all(const Trace& trace,
                                     const VerifyOptions& options = {});

}  // namespace pramcheck

#endif  // PRAMCHECK_VERIFY_HPP_
