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

#ifndef PRAMCHECK_RW_CLOSURE_HPP_
#define PRAMCHECK_RW_CLOSURE_HPP_

#include <cstddef>
#include <optional>

#include "pramcheck/graph.hpp"
#include "pramcheck/verdict.hpp"

namespace pramcheck {

struct RwClosureRun {
  Verdict verdict;
  // Final graph; absent when a read has no dictating write.
  std::optional<OperationGraph> graph;
  std::optional<ReadMapping> mapping;
  std::size_t passes = 0;
  std::size_t rule_c_edges = 0;
};

// Rules A and B, then close / add every w' -> D(r) with w' reaching r until
// nothing changes; consistent iff the final graph is acyclic. Throws
// Error(kDuplicateValue) on duplicate-value traces.
RwClosureRun run_rw_closure(const Trace& trace, ProcessId focus);
Verdict verify_rw_closure(const Trace& trace, ProcessId focus);

// One sweep over the reads in program order against the current closure.
// Returns the number of edges added.
std::size_t apply_rule_c_pass(OperationGraph& graph,
                              const ReadMapping& mapping);

// Number of same-variable triples (w', D(r), r) with w' reaching r but not
// D(r). Zero on a saturated graph. Requires a closed graph.
std::size_t count_rule_c_violations(const OperationGraph& graph,
                                    const ReadMapping& mapping);

// For each focus read in program order, the not-yet-scheduled part of its
// downset in topological order, then whatever is left. Works on the sparse
// edges alone; throws CycleFound if the graph is cyclic.
Schedule build_dag_schedule(const OperationGraph& graph);

}  // namespace pramcheck

#endif  // PRAMCHECK_RW_CLOSURE_HPP_
