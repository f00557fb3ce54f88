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

#include "pramcheck/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

namespace pramcheck {

const char* to_string(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::kProgramOrder: return "PO";
    case EdgeTag::kWriteTo: return "WR";
    case EdgeTag::kRuleC: return "WpW";
  }
  return "?";
}

bool BitMatrix::subset_of(const BitMatrix& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

std::string describe(const Trace& trace, const Cycle& cycle) {
  std::string out;
  for (std::size_t i = 0; i < cycle.ops.size(); ++i) {
    if (i > 0) {
      out += " -";
      out += to_string(cycle.tags[i - 1]);
      out += "-> ";
    }
    out += trace.describe(cycle.ops[i]);
  }
  return out;
}

OperationGraph::OperationGraph(const Trace& trace,
                               const VisibleProjection& projection)
    : trace_(&trace),
      focus_(projection.focus),
      ops_(projection.ops),
      node_of_(trace.size(), kNoNode),
      out_(projection.ops.size()),
      in_(projection.ops.size()) {
  std::sort(ops_.begin(), ops_.end());
  for (NodeId n = 0; n < ops_.size(); ++n) node_of_.at(ops_[n]) = n;
}

NodeId OperationGraph::node(OpIndex o) const {
  if (!contains(o)) {
    throw Error(ErrorCode::kInvalidArgument,
                "operation #" + std::to_string(o) + " is not visible");
  }
  return node_of_[o];
}

bool OperationGraph::add_edge(NodeId from, NodeId to, EdgeTag tag) {
  if (!tags_.emplace(key(from, to), tag).second) return false;
  out_[from].push_back(Edge{to, tag});
  in_[to].push_back(Edge{from, tag});
  edges_.push_back(EdgeRecord{from, to, tag});
  if (has_matrix_) reach_.set(from, to);
  closed_ = false;
  return true;
}

std::optional<EdgeTag> OperationGraph::edge_tag(NodeId from, NodeId to) const {
  auto it = tags_.find(key(from, to));
  if (it == tags_.end()) return std::nullopt;
  return it->second;
}

void OperationGraph::ensure_matrix() {
  if (has_matrix_) return;
  reach_ = BitMatrix(ops_.size());
  for (NodeId n = 0; n < ops_.size(); ++n) reach_.set(n, n);
  for (const EdgeRecord& e : edges_) reach_.set(e.from, e.to);
  has_matrix_ = true;
}

void OperationGraph::close() {
  ensure_matrix();
  const std::size_t n = ops_.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k && reach_.test(i, k)) reach_.merge_row(i, k);
    }
  }
  closed_ = true;
}

void add_rule_a_b(OperationGraph& graph, const ReadMapping& mapping) {
  const Trace& trace = graph.trace();
  for (std::size_t p = 0; p < trace.process_count(); ++p) {
    OpIndex prev = kNoOp;
    for (OpIndex o : trace.history(static_cast<ProcessId>(p))) {
      if (!graph.contains(o)) continue;
      if (prev != kNoOp) {
        graph.add_edge(graph.node(prev), graph.node(o), EdgeTag::kProgramOrder);
      }
      prev = o;
    }
  }
  for (NodeId n = 0; n < graph.node_count(); ++n) {
    const Operation& o = graph.operation(n);
    if (!o.is_read()) continue;
    const OpIndex w = mapping.dictating(o.index);
    if (w != kNoOp) graph.add_edge(graph.node(w), n, EdgeTag::kWriteTo);
  }
}

std::vector<NodeId> downset(const OperationGraph& graph, NodeId n) {
  std::vector<NodeId> out;
  for (NodeId m = 0; m < graph.node_count(); ++m) {
    if (graph.reaches(m, n)) out.push_back(m);
  }
  return out;
}

namespace {

std::vector<bool> bfs_mask(const OperationGraph& graph, NodeId start,
                           bool backwards) {
  std::vector<bool> seen(graph.node_count(), false);
  std::vector<NodeId> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    for (const Edge& e :
         backwards ? graph.predecessors(n) : graph.successors(n)) {
      if (!seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

Cycle make_cycle(const OperationGraph& graph, const std::vector<NodeId>& path) {
  // path = n0, n1, ..., nk with an edge nk -> n0.
  Cycle cycle;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const NodeId a = path[i];
    const NodeId b = path[(i + 1) % path.size()];
    cycle.ops.push_back(graph.op(a));
    cycle.tags.push_back(*graph.edge_tag(a, b));
  }
  cycle.ops.push_back(graph.op(path.front()));
  return cycle;
}

}  // namespace

std::vector<bool> ancestors_mask(const OperationGraph& graph, NodeId n) {
  return bfs_mask(graph, n, true);
}

std::vector<bool> descendants_mask(const OperationGraph& graph, NodeId n) {
  return bfs_mask(graph, n, false);
}

Schedule topo_sort(const OperationGraph& graph,
                   std::span<const NodeId> subset) {
  std::vector<bool> member(graph.node_count(), false);
  for (NodeId n : subset) member.at(n) = true;
  std::vector<std::size_t> indegree(graph.node_count(), 0);
  for (NodeId n : subset) {
    for (const Edge& e : graph.predecessors(n)) {
      if (member[e.to]) ++indegree[n];
    }
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId n : subset) {
    if (indegree[n] == 0) ready.push(n);
  }
  Schedule order;
  order.reserve(subset.size());
  std::vector<bool> emitted(graph.node_count(), false);
  while (!ready.empty()) {
    const NodeId n = ready.top();
    ready.pop();
    emitted[n] = true;
    order.push_back(graph.op(n));
    for (const Edge& e : graph.successors(n)) {
      if (member[e.to] && --indegree[e.to] == 0) ready.push(e.to);
    }
  }
  if (order.size() == subset.size()) return order;

  // Every leftover node has a leftover predecessor; walk backwards until a
  // node repeats.
  NodeId cur = 0;
  for (NodeId n : subset) {
    if (!emitted[n]) {
      cur = n;
      break;
    }
  }
  std::vector<std::size_t> seen_at(graph.node_count(), kNoOp);
  std::vector<NodeId> walk;
  while (seen_at[cur] == kNoOp) {
    seen_at[cur] = walk.size();
    walk.push_back(cur);
    for (const Edge& e : graph.predecessors(cur)) {
      if (member[e.to] && !emitted[e.to]) {
        cur = e.to;
        break;
      }
    }
  }
  std::vector<NodeId> path(walk.begin() + seen_at[cur], walk.end());
  std::reverse(path.begin(), path.end());
  throw CycleFound(make_cycle(graph, path));
}

std::optional<Cycle> find_cycle(const OperationGraph& graph) {
  enum : std::uint8_t { kWhite, kGray, kBlack };
  const std::size_t n = graph.node_count();
  std::vector<std::uint8_t> color(n, kWhite);
  std::vector<std::size_t> stack_pos(n, 0);
  struct Frame {
    NodeId node;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (color[root] != kWhite) continue;
    stack.push_back({root, 0});
    color[root] = kGray;
    stack_pos[root] = 0;
    while (!stack.empty()) {
      Frame& top = stack.back();
      auto succ = graph.successors(top.node);
      if (top.next == succ.size()) {
        color[top.node] = kBlack;
        stack.pop_back();
        continue;
      }
      const NodeId next = succ[top.next++].to;
      if (color[next] == kGray) {
        std::vector<NodeId> path;
        for (std::size_t i = stack_pos[next]; i < stack.size(); ++i) {
          path.push_back(stack[i].node);
        }
        return make_cycle(graph, path);
      }
      if (color[next] == kWhite) {
        color[next] = kGray;
        stack_pos[next] = stack.size();
        stack.push_back({next, 0});
      }
    }
  }
  return std::nullopt;
}

std::optional<Cycle> shortest_cycle_through(const OperationGraph& graph,
                                            NodeId from, NodeId to) {
  if (!graph.has_edge(from, to)) return std::nullopt;
  if (from == to) return make_cycle(graph, {from});
  std::vector<NodeId> parent(graph.node_count(), ~NodeId{0});
  std::deque<NodeId> queue{to};
  parent[to] = to;
  while (!queue.empty()) {
    const NodeId n = queue.front();
    queue.pop_front();
    if (n == from) break;
    for (const Edge& e : graph.successors(n)) {
      if (parent[e.to] == ~NodeId{0}) {
        parent[e.to] = n;
        queue.push_back(e.to);
      }
    }
  }
  if (parent[from] == ~NodeId{0}) return std::nullopt;
  std::vector<NodeId> back;
  for (NodeId n = from; n != to; n = parent[n]) back.push_back(n);
  back.push_back(to);
  // back = from, ..., to (reversed BFS path); the cycle is from -> to -> ...
  std::vector<NodeId> path{from};
  for (std::size_t i = back.size() - 1; i >= 1; --i) path.push_back(back[i]);
  return make_cycle(graph, path);
}

std::string dump_graph(const OperationGraph& graph) {
  std::string out;
  for (const EdgeRecord& e : graph.edges()) {
    out += std::to_string(graph.op(e.from));
    out += ' ';
    out += std::to_string(graph.op(e.to));
    out += ' ';
    out += to_string(e.tag);
    out += '\n';
  }
  return out;
}

}  // namespace pramcheck
