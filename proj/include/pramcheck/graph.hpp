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

#ifndef PRAMCHECK_GRAPH_HPP_
#define PRAMCHECK_GRAPH_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pramcheck/error.hpp"
#include "pramcheck/legality.hpp"
#include "pramcheck/trace.hpp"

namespace pramcheck {

// PO: program order, WR: write-to, WpW: w' -> w edges forced by a read
// between w = D(r) and r.
enum class EdgeTag : std::uint8_t { kProgramOrder, kWriteTo, kRuleC };

const char* to_string(EdgeTag tag);

// Dense id of a visible operation inside one graph. Node order follows
// operation index order.
using NodeId = std::uint32_t;

struct Edge {
  NodeId to;
  EdgeTag tag;
};

struct EdgeRecord {
  NodeId from;
  NodeId to;
  EdgeTag tag;
};

// Square boolean matrix stored as 64-bit words per row.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n)
      : n_(n), words_((n + 63) / 64), bits_(n_ * words_, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }
  void set(std::size_t i, std::size_t j) {
    bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }
  // row(i) |= row(k)
  void merge_row(std::size_t i, std::size_t k) {
    std::uint64_t* dst = &bits_[i * words_];
    const std::uint64_t* src = &bits_[k * words_];
    for (std::size_t w = 0; w < words_; ++w) dst[w] |= src[w];
  }
  bool operator==(const BitMatrix&) const = default;
  // Every bit of *this is set in `other`.
  bool subset_of(const BitMatrix& other) const;

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Sequence of operations o0 -> o1 -> ... -> o0 (first == last); tags[i]
// labels the edge ops[i] -> ops[i + 1].
struct Cycle {
  std::vector<OpIndex> ops;
  std::vector<EdgeTag> tags;
};

std::string describe(const Trace& trace, const Cycle& cycle);

class CycleFound : public Error {
 public:
  explicit CycleFound(Cycle cycle)
      : Error(ErrorCode::kCycleFound, "operation graph has a cycle"),
        cycle_(std::move(cycle)) {}

  const Cycle& cycle() const noexcept { return cycle_; }

 private:
  Cycle cycle_;
};

// Typed edges over one focus process's visible operations plus the
// reachability matrix. The matrix is reflexive; edges added after close()
// set their own bit but are not propagated until the next close().
class OperationGraph {
 public:
  OperationGraph(const Trace& trace, const VisibleProjection& projection);

  const Trace& trace() const { return *trace_; }
  ProcessId focus() const { return focus_; }
  std::size_t node_count() const { return ops_.size(); }
  OpIndex op(NodeId n) const { return ops_[n]; }
  const Operation& operation(NodeId n) const { return trace_->op(ops_[n]); }
  bool contains(OpIndex o) const {
    return o < node_of_.size() && node_of_[o] != kNoNode;
  }
  NodeId node(OpIndex o) const;

  // Returns false (and changes nothing) if from -> to already exists.
  bool add_edge(NodeId from, NodeId to, EdgeTag tag);
  bool has_edge(NodeId from, NodeId to) const {
    return tags_.count(key(from, to)) != 0;
  }
  std::optional<EdgeTag> edge_tag(NodeId from, NodeId to) const;
  std::span<const Edge> successors(NodeId n) const { return out_[n]; }
  std::span<const Edge> predecessors(NodeId n) const { return in_[n]; }
  // Insertion order.
  std::span<const EdgeRecord> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Reflexive-transitive closure of the edge set, Warshall over bit rows.
  void close();
  bool closed() const { return closed_; }
  bool reaches(NodeId from, NodeId to) const { return reach_.test(from, to); }
  const BitMatrix& reach() const { return reach_; }

 private:
  static constexpr NodeId kNoNode = ~NodeId{0};
  static std::uint64_t key(NodeId a, NodeId b) {
    return (std::uint64_t{a} << 32) | b;
  }
  void ensure_matrix();

  const Trace* trace_;
  ProcessId focus_;
  std::vector<OpIndex> ops_;
  std::vector<NodeId> node_of_;
  std::vector<std::vector<Edge>> out_;
  std::vector<std::vector<Edge>> in_;
  std::vector<EdgeRecord> edges_;
  std::unordered_map<std::uint64_t, EdgeTag> tags_;
  BitMatrix reach_;
  bool has_matrix_ = false;
  bool closed_ = false;
};

// Program-order edges between consecutive visible operations of a process
// and write-to edges D(r) -> r for every mapped visible read.
void add_rule_a_b(OperationGraph& graph, const ReadMapping& mapping);

// Nodes that reach `n` (including n), from the closure matrix; requires
// close(). Sorted by node id.
std::vector<NodeId> downset(const OperationGraph& graph, NodeId n);

// Same set computed by reverse BFS over the sparse edges; no closure needed.
std::vector<bool> ancestors_mask(const OperationGraph& graph, NodeId n);
std::vector<bool> descendants_mask(const OperationGraph& graph, NodeId n);

// Kahn's algorithm on the induced subgraph; among ready nodes the smallest
// operation index goes first. Throws CycleFound.
Schedule topo_sort(const OperationGraph& graph, std::span<const NodeId> subset);

std::optional<Cycle> find_cycle(const OperationGraph& graph);

// Shortest cycle that uses the existing edge from -> to.
std::optional<Cycle> shortest_cycle_through(const OperationGraph& graph,
                                            NodeId from, NodeId to);

// `from to tag` per line, operation indices, insertion order.
std::string dump_graph(const OperationGraph& graph);

}  // namespace pramcheck

#endif  // PRAMCHECK_GRAPH_HPP_
