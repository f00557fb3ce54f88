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

#include "pramcheck/rw_closure.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "pramcheck/error.hpp"

namespace pramcheck {
namespace {

std::vector<std::vector<NodeId>> writes_by_variable(
    const OperationGraph& graph) {
  std::vector<std::vector<NodeId>> out(graph.trace().variable_count());
  for (NodeId n = 0; n < graph.node_count(); ++n) {
    const Operation& o = graph.operation(n);
    if (o.is_write()) out[raw(o.variable)].push_back(n);
  }
  return out;
}

std::vector<NodeId> focus_reads(const OperationGraph& graph) {
  std::vector<NodeId> reads;
  for (OpIndex o : graph.trace().history(graph.focus())) {
    if (graph.trace().op(o).is_read()) reads.push_back(graph.node(o));
  }
  return reads;
}

bool has_cycle(const OperationGraph& graph) {
  for (const EdgeRecord& e : graph.edges()) {
    if (graph.reaches(e.to, e.from)) return true;
  }
  return false;
}

// Prefer a short cycle through the most recent w' -> w edge that lies on one.
Cycle report_cycle(const OperationGraph& graph) {
  auto edges = graph.edges();
  for (std::size_t i = edges.size(); i-- > 0;) {
    if (edges[i].tag != EdgeTag::kRuleC) continue;
    if (!graph.reaches(edges[i].to, edges[i].from)) continue;
    if (auto c = shortest_cycle_through(graph, edges[i].from, edges[i].to)) {
      return *c;
    }
  }
  if (auto c = find_cycle(graph)) return *c;
  throw Error(ErrorCode::kInternal, "closure reports a cycle the edges lack");
}

}  // namespace

std::size_t apply_rule_c_pass(OperationGraph& graph,
                              const ReadMapping& mapping) {
  const auto writes = writes_by_variable(graph);
  std::size_t added = 0;
  for (NodeId r : focus_reads(graph)) {
    const Operation& read = graph.operation(r);
    const NodeId w = graph.node(mapping.dictating(read.index));
    for (NodeId other : writes[raw(read.variable)]) {
      if (other == w || !graph.reaches(other, r)) continue;
      if (graph.reaches(other, w)) continue;
      if (graph.add_edge(other, w, EdgeTag::kRuleC)) ++added;
    }
  }
  return added;
}

std::size_t count_rule_c_violations(const OperationGraph& graph,
                                    const ReadMapping& mapping) {
  const auto writes = writes_by_variable(graph);
  std::size_t violations = 0;
  for (NodeId r : focus_reads(graph)) {
    const Operation& read = graph.operation(r);
    const NodeId w = graph.node(mapping.dictating(read.index));
    for (NodeId other : writes[raw(read.variable)]) {
      if (other != w && graph.reaches(other, r) && !graph.reaches(other, w)) {
        ++violations;
      }
    }
  }
  return violations;
}

RwClosureRun run_rw_closure(const Trace& trace, ProcessId focus) {
  if (has_duplicates(classify(trace))) {
    throw Error(ErrorCode::kDuplicateValue,
                "rw-closure needs unique write values per variable; use the "
                "oracle");
  }
  RwClosureRun run;
  run.verdict.focus = focus;
  run.verdict.algorithm = Algorithm::kRwClosure;
  const VisibleProjection projection = visible(trace, focus);
  try {
    run.mapping = build_read_mapping(trace, projection);
  } catch (const UnmatchedRead& e) {
    run.verdict.outcome = Outcome::kInconsistent;
    run.verdict.reason = Reason::kNoDictatingWrite;
    run.verdict.culprit = e.read();
    return run;
  }

  OperationGraph& graph = run.graph.emplace(trace, projection);
  add_rule_a_b(graph, *run.mapping);
  while (true) {
    graph.close();
    ++run.passes;
    const std::size_t added = apply_rule_c_pass(graph, *run.mapping);
    run.rule_c_edges += added;
    if (added == 0) break;
  }

  if (has_cycle(graph)) {
    run.verdict.outcome = Outcome::kInconsistent;
    run.verdict.reason = Reason::kCycle;
    run.verdict.cycle = report_cycle(graph);
  } else {
    run.verdict.outcome = Outcome::kConsistent;
    run.verdict.witness = build_dag_schedule(graph);
  }
  return run;
}

Verdict verify_rw_closure(const Trace& trace, ProcessId focus) {
  return run_rw_closure(trace, focus).verdict;
}

Schedule build_dag_schedule(const OperationGraph& graph) {
  // The scheduled set is always ancestor-closed, so a reverse search from r
  // that stops at scheduled nodes yields exactly r's downset minus them.
  std::vector<bool> scheduled(graph.node_count(), false);
  Schedule schedule;
  schedule.reserve(graph.node_count());
  std::vector<NodeId> delta;
  std::vector<NodeId> stack;
  for (NodeId r : focus_reads(graph)) {
    delta.clear();
    if (scheduled[r]) continue;
    std::vector<bool> seen(graph.node_count(), false);
    stack.assign(1, r);
    seen[r] = true;
    while (!stack.empty()) {
      const NodeId n = stack.back();
      stack.pop_back();
      delta.push_back(n);
      for (const Edge& e : graph.predecessors(n)) {
        if (!scheduled[e.to] && !seen[e.to]) {
          seen[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
    std::sort(delta.begin(), delta.end());
    for (OpIndex o : topo_sort(graph, delta)) schedule.push_back(o);
    for (NodeId n : delta) scheduled[n] = true;
  }
  delta.clear();
  for (NodeId n = 0; n < graph.node_count(); ++n) {
    if (!scheduled[n]) delta.push_back(n);
  }
  for (OpIndex o : topo_sort(graph, delta)) schedule.push_back(o);
  return schedule;
}

}  // namespace pramcheck
