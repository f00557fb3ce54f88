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

#ifndef PRAMCHECK_READ_CENTRIC_HPP_
#define PRAMCHECK_READ_CENTRIC_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "pramcheck/graph.hpp"
#include "pramcheck/verdict.hpp"

namespace pramcheck {

struct ReadCentricOptions {
  // Recompute first-reachable-read and preceding-write tables from scratch
  // at every use and at the end of each read; throws Error(kInternal) on any
  // mismatch. Quadratic per read, meant for small traces.
  bool debug_structures = false;
};

// One w' -> w edge added while processing the read at `read_rank`.
struct RuleCEvent {
  OpIndex from;
  OpIndex to;
  std::size_t read_rank;
  bool in_topo_schedule;
};

struct ReadCentricStats {
  std::size_t reads_processed = 0;
  std::size_t topo_schedule_calls = 0;
  std::size_t rule_c_edges = 0;
  // Largest number of edges one write added as the w' part within a single
  // topo_schedule call.
  std::size_t max_edges_per_writer = 0;
  std::size_t debug_checks = 0;
  // Cycles found only when building the witness; zero when the incremental
  // cycle test is complete.
  std::size_t late_cycles = 0;
  std::vector<RuleCEvent> events;
};

// Incremental checker: processes the focus reads in program order and
// applies the w' -> D(r) rule only where reachability changed. Most callers
// want verify_read_centric(); the steps are public so tests can inspect the
// tables between reads.
class ReadCentricChecker {
 public:
  static constexpr std::size_t kNoRead = static_cast<std::size_t>(-1);
  static constexpr NodeId kNilWrite = ~NodeId{0};

  // Throws Error(kDuplicateValue) on duplicate-value traces.
  ReadCentricChecker(const Trace& trace, ProcessId focus,
                     ReadCentricOptions options = {});

  // Rules A and B plus the up-front rejections. False once a verdict of
  // inconsistency is known.
  bool prepare();
  // Processes the next focus read. False on a cycle.
  bool step();
  std::size_t next_read() const { return next_; }
  std::size_t read_count() const { return reads_.size(); }
  // prepare(), step() until done, then the witness.
  Verdict run();

  // Sub-procedures, all on node ids of graph().
  void init_reachability(std::size_t k);
  void pw_update(NodeId from, NodeId to);
  // False iff a cycle was detected. `added` receives the new edge target.
  bool apply_rule_c(NodeId w_prime, std::size_t r_loop, NodeId* added);
  bool cycle_detection(NodeId w_prime, NodeId w) const;
  void update_reachability(NodeId w_prime, NodeId w, std::size_t r_loop);
  bool topo_schedule(std::size_t k);

  const OperationGraph& graph() const { return *graph_; }
  const ReadMapping& mapping() const { return *mapping_; }
  const Verdict& verdict() const { return verdict_; }
  const ReadCentricStats& stats() const { return stats_; }

  // Focus read of the given program-order rank.
  NodeId read_node(std::size_t rank) const { return reads_.at(rank); }
  // kNoRead when `w` reaches no processed read.
  std::size_t rr(NodeId w) const { return rr_.at(w); }
  NodeId pw(NodeId o, VariableId v) const {
    return pw_.at(static_cast<std::size_t>(o) * vars_ + raw(v));
  }
  // Rank of the first dictated focus read; kNoRead for writes nobody reads.
  std::size_t first_read(NodeId w) const { return first_read_.at(w); }
  // Writes on `v` inside the downset of the last processed read.
  const std::vector<NodeId>& local_writes(VariableId v) const {
    return lw_.at(raw(v));
  }
  // Naive recomputations used by the debug mode.
  std::size_t rr_from_scratch(NodeId w) const;
  NodeId pw_from_scratch(NodeId o, VariableId v) const;

 private:
  NodeId& pw_slot(NodeId o, std::size_t v) {
    return pw_[static_cast<std::size_t>(o) * vars_ + v];
  }
  // NILWRITE below everything; writes compared by first dictated read.
  NodeId later_write(NodeId a, NodeId b) const;
  std::uint32_t fresh_epoch();
  bool in_down(NodeId n, std::size_t k) const { return entered_[n] <= k; }
  // Ancestors of `from` (inclusive) that joined no downset before read
  // `limit`; limit 0 returns every ancestor.
  std::vector<NodeId> reverse_reach(NodeId from, std::size_t limit);
  bool add_rule_c_edge(NodeId from, NodeId to, std::size_t k, bool in_topo);
  void reject(NodeId w_prime, NodeId w);
  void check_tables(NodeId o, bool check_rr);
  void check_all_tables();

  const Trace& trace_;
  ProcessId focus_;
  ReadCentricOptions options_;
  std::optional<OperationGraph> graph_;
  std::optional<ReadMapping> mapping_;
  Verdict verdict_;
  ReadCentricStats stats_;
  bool prepared_ = false;
  bool failed_ = false;

  std::size_t vars_ = 0;
  std::vector<NodeId> reads_;
  std::vector<std::size_t> read_rank_;
  std::vector<NodeId> dictating_;
  std::vector<std::size_t> first_read_;
  std::vector<std::size_t> rr_;
  std::vector<std::size_t> rr_checked_;
  std::vector<NodeId> pw_;
  std::vector<std::vector<NodeId>> lw_;
  // Last local write per (variable, process); earlier ones on the same
  // process reach D(r) through program order.
  std::vector<std::vector<NodeId>> lw_last_;
  // Rank of the read whose downset a node joined first; a node is in the
  // downset of read k iff entered_[n] <= k.
  std::vector<std::size_t> entered_;
  // Visible nodes per process in program order, and how many of them lie in
  // the downset of the last processed read (always a prefix).
  std::vector<std::vector<NodeId>> vis_;
  std::vector<std::size_t> prefix_;
  // Over the focus's visible nodes: the last write strictly before each
  // position, or kNilWrite.
  std::vector<NodeId> focus_write_before_;
  std::size_t next_ = 0;
  // Scratch marks; a node is marked iff mark_[n] == epoch_.
  std::vector<std::uint32_t> mark_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> slot_;
  // Edges added per writer during the running topo_schedule call.
  std::vector<std::size_t> topo_adds_;
};

Verdict verify_read_centric(const Trace& trace, ProcessId focus,
                            ReadCentricOptions options = {});

}  // namespace pramcheck

#endif  // PRAMCHECK_READ_CENTRIC_HPP_
