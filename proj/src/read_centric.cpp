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

#include "pramcheck/read_centric.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "pramcheck/error.hpp"
#include "pramcheck/rw_closure.hpp"

namespace pramcheck {

ReadCentricChecker::ReadCentricChecker(const Trace& trace, ProcessId focus,
                                       ReadCentricOptions options)
    : trace_(trace), focus_(focus), options_(options) {
  if (has_duplicates(classify(trace))) {
    throw Error(ErrorCode::kDuplicateValue,
                "read-centric needs unique write values per variable; use the "
                "oracle");
  }
  verdict_.focus = focus;
  verdict_.algorithm = Algorithm::kReadCentric;
}

bool ReadCentricChecker::prepare() {
  if (prepared_) return !failed_;
  prepared_ = true;
  const VisibleProjection projection = visible(trace_, focus_);
  try {
    mapping_ = build_read_mapping(trace_, projection);
  } catch (const UnmatchedRead& e) {
    failed_ = true;
    verdict_.outcome = Outcome::kInconsistent;
    verdict_.reason = Reason::kNoDictatingWrite;
    verdict_.culprit = e.read();
    return false;
  }
  OperationGraph& g = graph_.emplace(trace_, projection);
  add_rule_a_b(g, *mapping_);

  const std::size_t n = g.node_count();
  vars_ = trace_.variable_count();
  read_rank_.assign(n, kNoRead);
  dictating_.assign(n, kNilWrite);
  first_read_.assign(n, kNoRead);
  for (OpIndex o : trace_.history(focus_)) {
    if (!trace_.op(o).is_read()) continue;
    const NodeId r = g.node(o);
    const NodeId d = g.node(mapping_->dictating(o));
    read_rank_[r] = reads_.size();
    dictating_[r] = d;
    if (first_read_[d] == kNoRead) first_read_[d] = reads_.size();
    reads_.push_back(r);
  }
  for (NodeId r : reads_) {
    const NodeId d = dictating_[r];
    const Operation& dop = g.operation(d);
    if (dop.process == focus_ &&
        trace_.program_position(dop.index) >
            trace_.program_position(g.op(r))) {
      failed_ = true;
      verdict_.outcome = Outcome::kInconsistent;
      verdict_.reason = Reason::kCycle;
      verdict_.cycle = shortest_cycle_through(g, d, r);
      return false;
    }
  }
  rr_.assign(n, kNoRead);
  rr_checked_.assign(n, kNoRead);
  pw_.assign(n * vars_, kNilWrite);
  lw_.assign(vars_, {});
  lw_last_.assign(vars_, std::vector<NodeId>(trace_.process_count(),
                                             kNilWrite));
  entered_.assign(n, kNoRead);
  vis_.assign(trace_.process_count(), {});
  for (NodeId x = 0; x < n; ++x) {
    vis_[raw(g.operation(x).process)].push_back(x);
  }
  for (auto& list : vis_) {
    std::sort(list.begin(), list.end(), [&](NodeId a, NodeId b) {
      return trace_.program_position(g.op(a)) <
             trace_.program_position(g.op(b));
    });
  }
  prefix_.assign(trace_.process_count(), 0);
  const auto& mine = vis_[raw(focus_)];
  focus_write_before_.assign(mine.size() + 1, kNilWrite);
  for (std::size_t i = 0; i < mine.size(); ++i) {
    focus_write_before_[i + 1] =
        g.operation(mine[i]).is_write() ? mine[i] : focus_write_before_[i];
  }
  mark_.assign(n, 0);
  slot_.assign(n, ~std::uint32_t{0});
  topo_adds_.assign(n, 0);
  return true;
}

NodeId ReadCentricChecker::later_write(NodeId a, NodeId b) const {
  if (a == kNilWrite) return b;
  if (b == kNilWrite) return a;
  return first_read_[a] >= first_read_[b] ? a : b;
}

std::uint32_t ReadCentricChecker::fresh_epoch() {
  if (++epoch_ == 0) {
    std::fill(mark_.begin(), mark_.end(), 0);
    epoch_ = 1;
  }
  return epoch_;
}

std::vector<NodeId> ReadCentricChecker::reverse_reach(NodeId from,
                                                      std::size_t limit) {
  const std::uint32_t e = fresh_epoch();
  std::vector<NodeId> out;
  std::vector<NodeId> stack{from};
  mark_[from] = e;
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    out.push_back(n);
    for (const Edge& edge : graph_->predecessors(n)) {
      if (mark_[edge.to] == e || entered_[edge.to] < limit) continue;
      mark_[edge.to] = e;
      stack.push_back(edge.to);
    }
  }
  return out;
}

void ReadCentricChecker::pw_update(NodeId from, NodeId to) {
  for (std::size_t v = 0; v < vars_; ++v) {
    NodeId& slot = pw_slot(to, v);
    slot = later_write(slot, pw_slot(from, v));
  }
  if (first_read_[from] != kNoRead) {
    NodeId& slot = pw_slot(to, raw(graph_->operation(from).variable));
    slot = later_write(slot, from);
  }
}

void ReadCentricChecker::init_reachability(std::size_t k) {
  const OperationGraph& g = *graph_;
  const NodeId r = reads_[k];
  // Nodes outside the previous read's downset; that downset is
  // ancestor-closed, so the search can stop at its members.
  const std::vector<NodeId> delta = reverse_reach(r, k);
  for (NodeId n : delta) {
    entered_[n] = k;
    const Operation& o = g.operation(n);
    if (!o.is_write()) continue;
    rr_[n] = k;
    rr_checked_[n] = k;
    lw_[raw(o.variable)].push_back(n);
    NodeId& last = lw_last_[raw(o.variable)][raw(o.process)];
    if (last == kNilWrite ||
        trace_.program_position(g.op(last)) <
            trace_.program_position(o.index)) {
      last = n;
    }
  }

  std::size_t covered = 1;
  // Writes of the focus between the previous read and this one.
  const auto& mine = vis_[raw(focus_)];
  const std::size_t at = trace_.program_position(g.op(r));
  NodeId pre = k > 0 ? reads_[k - 1] : kNilWrite;
  for (std::size_t i = k > 0 ? trace_.program_position(g.op(pre)) + 1 : 0;
       i < at; ++i) {
    if (pre != kNilWrite) pw_update(pre, mine[i]);
    pre = mine[i];
    ++covered;
  }
  if (pre != kNilWrite) pw_update(pre, r);

  // The rest of the new part sits on the dictating write's process, right
  // after its last write in the previous downset.
  const std::uint32_t home = raw(g.operation(dictating_[r]).process);
  const auto& chain = vis_[home];
  const std::size_t start = prefix_[home];
  if (home == raw(focus_)) {
    pre = focus_write_before_[start];
  } else {
    pre = start > 0 ? chain[start - 1] : kNilWrite;
    for (std::size_t i = start; i < chain.size() && entered_[chain[i]] == k;
         ++i) {
      if (pre != kNilWrite) pw_update(pre, chain[i]);
      pre = chain[i];
      ++covered;
    }
  }
  if (pre != kNilWrite) pw_update(pre, r);
  if (covered != delta.size()) {
    throw Error(ErrorCode::kInternal,
                "new downset part of read #" + std::to_string(g.op(r)) +
                    " is not two program-order chains");
  }
  for (NodeId n : delta) {
    const std::uint32_t p = raw(g.operation(n).process);
    while (prefix_[p] < vis_[p].size() && in_down(vis_[p][prefix_[p]], k)) {
      ++prefix_[p];
    }
  }
}

bool ReadCentricChecker::cycle_detection(NodeId w_prime, NodeId w) const {
  const NodeId last =
      pw_[static_cast<std::size_t>(w_prime) * vars_ +
          raw(graph_->operation(w_prime).variable)];
  return last != kNilWrite && first_read_[w] <= first_read_[last];
}

void ReadCentricChecker::update_reachability(NodeId w_prime, NodeId w,
                                             std::size_t r_loop) {
  rr_[w_prime] = std::min(rr_[w_prime], rr_[w]);
  // Descendants of w inside r_loop's downset; a path from w to a member of
  // the downset never leaves it.
  const std::uint32_t e = fresh_epoch();
  std::vector<NodeId> stack{w};
  mark_[w] = e;
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    pw_update(w_prime, n);
    for (const Edge& edge : graph_->successors(n)) {
      if (mark_[edge.to] == e || !in_down(edge.to, r_loop)) continue;
      mark_[edge.to] = e;
      stack.push_back(edge.to);
    }
  }
}

bool ReadCentricChecker::add_rule_c_edge(NodeId from, NodeId to,
                                         std::size_t k, bool in_topo) {
  if (!graph_->add_edge(from, to, EdgeTag::kRuleC)) return false;
  ++stats_.rule_c_edges;
  stats_.events.push_back(
      RuleCEvent{graph_->op(from), graph_->op(to), k, in_topo});
  if (in_topo) {
    stats_.max_edges_per_writer =
        std::max(stats_.max_edges_per_writer, ++topo_adds_[from]);
  }
  return true;
}

bool ReadCentricChecker::apply_rule_c(NodeId w_prime, std::size_t r_loop,
                                      NodeId* added) {
  *added = kNilWrite;
  if (options_.debug_structures) check_tables(w_prime, true);
  const std::size_t r_new = rr_[w_prime];
  const std::size_t r_old = std::min(rr_checked_[w_prime], reads_.size());
  rr_checked_[w_prime] = r_new;
  const VariableId v = graph_->operation(w_prime).variable;
  NodeId w = kNilWrite;
  for (std::size_t t = r_new; t < r_old; ++t) {
    const NodeId x = reads_[t];
    if (graph_->operation(x).variable == v && dictating_[x] != w_prime) {
      w = dictating_[x];
      break;
    }
  }
  if (w == kNilWrite) return true;
  if (!add_rule_c_edge(w_prime, w, r_loop, true)) return true;
  *added = w;
  if (cycle_detection(w_prime, w)) {
    reject(w_prime, w);
    return false;
  }
  update_reachability(w_prime, w, r_loop);
  return true;
}

bool ReadCentricChecker::topo_schedule(std::size_t k) {
  ++stats_.topo_schedule_calls;
  const OperationGraph& g = *graph_;
  const NodeId d = dictating_[reads_[k]];
  const std::vector<NodeId> members = reverse_reach(d, 0);

  // SUCLIST / PRELIST are the graph's own adjacency restricted to members:
  // a w' -> w edge added below shows up there by itself.
  constexpr std::uint32_t kOut = ~std::uint32_t{0};
  std::vector<std::uint32_t>& slot = slot_;
  for (std::uint32_t i = 0; i < members.size(); ++i) {
    slot[members[i]] = i;
    topo_adds_[members[i]] = 0;
  }
  struct Reset {
    const std::vector<NodeId>& members;
    std::vector<std::uint32_t>& slot;
    ~Reset() {
      for (NodeId n : members) slot[n] = ~std::uint32_t{0};
    }
  } reset{members, slot};
  std::vector<std::size_t> count(members.size(), 0);
  std::vector<bool> done(members.size(), false);
  for (NodeId n : members) {
    for (const Edge& e : g.successors(n)) {
      if (slot[e.to] != kOut) ++count[slot[n]];
    }
  }

  std::deque<NodeId> qzero{d};
  while (!qzero.empty()) {
    const NodeId wp = qzero.front();
    qzero.pop_front();
    const std::uint32_t i = slot[wp];
    if (g.operation(wp).is_write() && !done[i]) {
      for (const Edge& e : g.successors(wp)) {
        if (slot[e.to] == kOut) continue;
        const std::size_t reach =
            g.operation(e.to).is_read() ? read_rank_[e.to] : rr_[e.to];
        rr_[wp] = std::min(rr_[wp], reach);
      }
      NodeId w;
      if (!apply_rule_c(wp, k, &w)) return false;
      // w' now waits for w.
      if (w != kNilWrite && slot[w] != kOut && !done[slot[w]]) ++count[i];
    }
    if (count[i] == 0 && !done[i]) {
      done[i] = true;
      for (const Edge& e : g.predecessors(wp)) {
        if (slot[e.to] == kOut) continue;
        const std::uint32_t o = slot[e.to];
        // Edges into an already finished node never counted.
        if (!done[o] && --count[o] == 0) qzero.push_back(e.to);
      }
    }
  }
  return true;
}

void ReadCentricChecker::reject(NodeId w_prime, NodeId w) {
  failed_ = true;
  verdict_.outcome = Outcome::kInconsistent;
  verdict_.reason = Reason::kCycle;
  OperationGraph& g = *graph_;
  // w precedes the last dictated write before w' in write order; the path
  // between them is itself a w'wr consequence that may not be an edge yet.
  const NodeId last = pw(w_prime, g.operation(w_prime).variable);
  if (last != kNilWrite && last != w) g.add_edge(w, last, EdgeTag::kRuleC);
  if (auto c = shortest_cycle_through(g, w_prime, w)) {
    verdict_.cycle = std::move(c);
    return;
  }
  if (auto c = find_cycle(g)) {
    verdict_.cycle = std::move(c);
    return;
  }
  // Saturate until the cycle the tables predicted shows up.
  while (true) {
    g.close();
    if (apply_rule_c_pass(g, *mapping_) == 0) break;
    if (auto c = find_cycle(g)) {
      verdict_.cycle = std::move(c);
      return;
    }
  }
  throw Error(ErrorCode::kInternal,
              "cycle test fired but the saturated graph is acyclic");
}

bool ReadCentricChecker::step() {
  if (!prepare()) return false;
  if (next_ >= reads_.size()) return true;
  const std::size_t k = next_;
  init_reachability(k);
  const NodeId r = reads_[k];
  const NodeId d = dictating_[r];
  const VariableId v = graph_->operation(r).variable;
  for (NodeId wp : lw_last_[raw(v)]) {
    if (wp == kNilWrite || wp == d) continue;
    if (!add_rule_c_edge(wp, d, k, false)) continue;
    if (options_.debug_structures) check_tables(wp, false);
    if (cycle_detection(wp, d)) {
      reject(wp, d);
      return false;
    }
    update_reachability(wp, d, k);
  }
  if (entered_[d] < k && !topo_schedule(k)) return false;
  ++next_;
  ++stats_.reads_processed;
  if (options_.debug_structures) check_all_tables();
  return true;
}

Verdict ReadCentricChecker::run() {
  if (!prepare()) return verdict_;
  while (next_ < reads_.size()) {
    if (!step()) return verdict_;
  }
  try {
    verdict_.witness = build_dag_schedule(*graph_);
  } catch (const CycleFound& e) {
    ++stats_.late_cycles;
    failed_ = true;
    verdict_.outcome = Outcome::kInconsistent;
    verdict_.reason = Reason::kCycle;
    verdict_.cycle = e.cycle();
    return verdict_;
  }
  if (options_.debug_structures) {
    graph_->close();
    if (count_rule_c_violations(*graph_, *mapping_) != 0) {
      throw Error(ErrorCode::kInternal,
                  "accepted graph is not closed under the w' -> D(r) rule");
    }
  }
  verdict_.outcome = Outcome::kConsistent;
  return verdict_;
}

std::size_t ReadCentricChecker::rr_from_scratch(NodeId w) const {
  std::size_t best = kNoRead;
  std::vector<bool> seen(graph_->node_count(), false);
  std::vector<NodeId> stack{w};
  seen[w] = true;
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    if (n != w && read_rank_[n] != kNoRead) {
      best = std::min(best, read_rank_[n]);
    }
    for (const Edge& e : graph_->successors(n)) {
      if (!seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return best;
}

NodeId ReadCentricChecker::pw_from_scratch(NodeId o, VariableId v) const {
  NodeId best = kNilWrite;
  std::vector<bool> seen(graph_->node_count(), false);
  std::vector<NodeId> stack{o};
  seen[o] = true;
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    for (const Edge& e : graph_->predecessors(n)) {
      if (seen[e.to]) continue;
      seen[e.to] = true;
      stack.push_back(e.to);
      const Operation& op = graph_->operation(e.to);
      if (op.is_write() && op.variable == v && first_read_[e.to] != kNoRead) {
        best = later_write(best, e.to);
      }
    }
  }
  return best;
}

void ReadCentricChecker::check_tables(NodeId o, bool check_rr) {
  ++stats_.debug_checks;
  const OperationGraph& g = *graph_;
  if (check_rr && g.operation(o).is_write() && rr_[o] != rr_from_scratch(o)) {
    throw Error(ErrorCode::kInternal,
                "first reachable read of " + trace_.describe(g.op(o)) +
                    " is stale");
  }
  for (std::size_t v = 0; v < vars_; ++v) {
    const VariableId var = static_cast<VariableId>(v);
    if (pw(o, var) != pw_from_scratch(o, var)) {
      throw Error(ErrorCode::kInternal,
                  "preceding write of " + trace_.describe(g.op(o)) + " on " +
                      trace_.variable_name(var) + " is stale");
    }
  }
}

void ReadCentricChecker::check_all_tables() {
  for (NodeId n = 0; n < graph_->node_count(); ++n) {
    if (entered_[n] != kNoRead) check_tables(n, true);
  }
}

Verdict verify_read_centric(const Trace& trace, ProcessId focus,
                            ReadCentricOptions options) {
  return ReadCentricChecker(trace, focus, options).run();
}

}  // namespace pramcheck
