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

#include "pramcheck/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace pramcheck {
namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 29;
  return h;
}

// Open-addressing set of 128-bit state fingerprints.
class FingerprintSet {
 public:
  FingerprintSet() : slots_(1024) {}

  bool contains(std::uint64_t a, std::uint64_t b) const {
    normalize(a, b);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = a & mask;; i = (i + 1) & mask) {
      const Slot& s = slots_[i];
      if (s.a == 0 && s.b == 0) return false;
      if (s.a == a && s.b == b) return true;
    }
  }

  void insert(std::uint64_t a, std::uint64_t b) {
    normalize(a, b);
    if (2 * (size_ + 1) > slots_.size()) grow();
    if (place(a, b)) ++size_;
  }

  std::size_t size() const { return size_; }

 private:
  struct Slot {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
  };

  static void normalize(std::uint64_t& a, std::uint64_t& b) {
    if (a == 0 && b == 0) b = 1;
  }

  bool place(std::uint64_t a, std::uint64_t b) {
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = a & mask;; i = (i + 1) & mask) {
      Slot& s = slots_[i];
      if (s.a == a && s.b == b) return false;
      if (s.a == 0 && s.b == 0) {
        s = Slot{a, b};
        return true;
      }
    }
  }

  void grow() {
    std::vector<Slot> old(slots_.size() * 2);
    old.swap(slots_);
    for (const Slot& s : old) {
      if (s.a != 0 || s.b != 0) place(s.a, s.b);
    }
  }

  std::vector<Slot> slots_;
  std::size_t size_ = 0;
};

class Search {
 public:
  Search(const Trace& trace, ProcessId focus, const OracleOptions& options)
      : trace_(trace), focus_(raw(focus)), options_(options) {
    const std::size_t procs = trace.process_count();
    ops_.resize(procs);
    for (std::size_t p = 0; p < procs; ++p) {
      for (OpIndex o : trace.history(static_cast<ProcessId>(p))) {
        if (p == focus_ || trace.op(o).is_write()) ops_[p].push_back(o);
      }
    }
    const auto& mine = ops_[focus_];
    reads_after_.assign(mine.size() + 1, 0);
    next_read_.assign(mine.size() + 1, kNoOp);
    for (std::size_t i = mine.size(); i-- > 0;) {
      const bool read = trace.op(mine[i]).is_read();
      reads_after_[i] = reads_after_[i + 1] + (read ? 1 : 0);
      next_read_[i] = read ? mine[i] : next_read_[i + 1];
    }
    pos_.assign(procs, 0);
    value_.assign(trace.variable_count(), 0);
    has_.assign(trace.variable_count(), 0);
    init_counts();
    start_ = std::chrono::steady_clock::now();
  }

  OracleRun run() {
    OracleRun out;
    out.verdict.focus = static_cast<ProcessId>(focus_);
    out.verdict.algorithm = Algorithm::kOracle;
    if (const OpIndex r = unmatched_read(); r != kNoOp) {
      out.verdict.outcome = Outcome::kInconsistent;
      out.verdict.reason = Reason::kNoDictatingWrite;
      out.verdict.culprit = r;
      return finish(out);
    }
    Status status = enter();
    while (status == Status::kFail && !stack_.empty()) {
      Frame& f = stack_.back();
      if (f.applied != kNoProcess) undo_write(f);
      if (f.next == f.candidates.size()) {
        if (options_.memoize) memo_.insert(f.key_a, f.key_b);
        undo_reads(f.greedy);
        stack_.pop_back();
        continue;
      }
      apply_write(f, f.candidates[f.next++]);
      status = enter();
    }
    switch (status) {
      case Status::kSuccess:
        out.verdict.outcome = Outcome::kConsistent;
        out.verdict.witness = std::move(path_);
        break;
      case Status::kTimeout:
        out.verdict.outcome = Outcome::kTimeout;
        out.verdict.reason = Reason::kBudgetExceeded;
        break;
      case Status::kFail:
        out.verdict.outcome = Outcome::kInconsistent;
        out.verdict.reason = Reason::kExhausted;
        break;
    }
    return finish(out);
  }

 private:
  enum class Status { kSuccess, kFail, kTimeout };
  static constexpr std::uint32_t kNoProcess = ~std::uint32_t{0};

  struct Frame {
    std::size_t greedy = 0;
    std::vector<std::uint32_t> candidates;
    std::size_t next = 0;
    std::uint64_t key_a = 0;
    std::uint64_t key_b = 0;
    std::uint32_t applied = kNoProcess;
    Value old_value = 0;
    std::uint8_t old_has = 0;
  };

  OracleRun& finish(OracleRun& out) {
    out.stats = stats_;
    out.stats.memo_entries = memo_.size();
    return out;
  }

  OpIndex unmatched_read() const {
    std::set<std::pair<VariableId, Value>> written;
    for (const Operation& o : trace_.operations()) {
      if (o.is_write()) written.emplace(o.variable, o.value);
    }
    for (OpIndex o : ops_[focus_]) {
      const Operation& op = trace_.op(o);
      if (op.is_read() && !written.count({op.variable, op.value})) return o;
    }
    return kNoOp;
  }

  bool read_enabled(const Operation& r) const {
    const std::uint32_t v = raw(r.variable);
    return has_[v] && value_[v] == r.value;
  }

  // Takes every enabled focus read at the head of the focus sequence.
  std::size_t take_reads() {
    std::size_t taken = 0;
    const auto& mine = ops_[focus_];
    while (pos_[focus_] < mine.size()) {
      const Operation& o = trace_.op(mine[pos_[focus_]]);
      if (!o.is_read() || !read_enabled(o)) break;
      path_.push_back(o.index);
      ++pos_[focus_];
      ++taken;
    }
    return taken;
  }

  void undo_reads(std::size_t n) {
    pos_[focus_] -= n;
    path_.resize(path_.size() - n);
  }

  // Counting bound. Between two consecutive focus operations on x, a read
  // of (x, v) whose predecessor left x at another value needs a write of
  // (x, v) by some other process inside that interval. Intervals are
  // disjoint, so a state where need_[k] > avail_[k] for some pair k is dead.
  // Focus operations never change need_: a focus op on x leaves x at exactly
  // the value the next focus op on x was counted against.
  void init_counts() {
    std::map<std::pair<std::uint32_t, Value>, std::uint32_t> ids;
    auto id_of = [&](const Operation& o) {
      return ids.emplace(std::make_pair(raw(o.variable), o.value), ids.size())
          .first->second;
    };
    pair_of_.assign(trace_.size(), 0);
    for (std::size_t p = 0; p < ops_.size(); ++p) {
      for (OpIndex o : ops_[p]) pair_of_[o] = id_of(trace_.op(o));
    }
    need_.assign(ids.size(), 0);
    avail_.assign(ids.size(), 0);
    for (std::size_t p = 0; p < ops_.size(); ++p) {
      if (p == focus_) continue;
      for (OpIndex o : ops_[p]) ++avail_[pair_of_[o]];
    }
    const auto& mine = ops_[focus_];
    on_var_.assign(trace_.variable_count(), {});
    for (std::size_t i = 0; i < mine.size(); ++i) {
      on_var_[raw(trace_.op(mine[i]).variable)].push_back(i);
    }
    for (const auto& list : on_var_) {
      for (std::size_t j = 0; j < list.size(); ++j) {
        const Operation& o = trace_.op(mine[list[j]]);
        if (!o.is_read()) continue;
        const bool fresh =
            j == 0 || trace_.op(mine[list[j - 1]]).value != o.value;
        if (fresh) ++need_[pair_of_[o.index]];
      }
    }
    for (std::size_t k = 0; k < need_.size(); ++k) {
      deficits_ += need_[k] > avail_[k];
    }
  }

  void adjust(std::vector<std::uint32_t>& counts, std::uint32_t k, int delta) {
    const bool before = need_[k] > avail_[k];
    counts[k] += delta;
    const bool after = need_[k] > avail_[k];
    deficits_ += static_cast<int>(after) - static_cast<int>(before);
  }

  // First focus read on x not yet scheduled, if no focus write on x comes
  // before it; kNoOp otherwise.
  OpIndex pending_read_on(std::uint32_t x) const {
    const auto& list = on_var_[x];
    const auto it =
        std::lower_bound(list.begin(), list.end(), pos_[focus_]);
    if (it == list.end()) return kNoOp;
    const OpIndex o = ops_[focus_][*it];
    return trace_.op(o).is_read() ? o : kNoOp;
  }

  void set_value(std::uint32_t x, std::uint8_t has, Value value, bool focus) {
    const OpIndex r = focus ? kNoOp : pending_read_on(x);
    if (r != kNoOp) {
      const Value want = trace_.op(r).value;
      const bool was_fresh = !has_[x] || value_[x] != want;
      const bool now_fresh = !has || value != want;
      if (was_fresh != now_fresh) {
        adjust(need_, pair_of_[r], now_fresh ? 1 : -1);
      }
    }
    value_[x] = value;
    has_[x] = has;
  }

  void apply_write(Frame& f, std::uint32_t p) {
    const Operation& w = trace_.op(ops_[p][pos_[p]]);
    const std::uint32_t v = raw(w.variable);
    f.applied = p;
    f.old_value = value_[v];
    f.old_has = has_[v];
    const bool focus = p == focus_;
    set_value(v, 1, w.value, focus);
    if (!focus) adjust(avail_, pair_of_[w.index], -1);
    path_.push_back(w.index);
    ++pos_[p];
  }

  void undo_write(Frame& f) {
    const std::uint32_t p = f.applied;
    --pos_[p];
    const Operation& w = trace_.op(ops_[p][pos_[p]]);
    const bool focus = p == focus_;
    if (!focus) adjust(avail_, pair_of_[w.index], +1);
    set_value(raw(w.variable), f.old_has, f.old_value, focus);
    path_.pop_back();
    f.applied = kNoProcess;
  }

  void fingerprint(std::uint64_t& a, std::uint64_t& b) const {
    a = 0x243f6a8885a308d3ULL;
    b = 0x13198a2e03707344ULL;
    for (std::uint32_t p : pos_) {
      a = mix(a, p);
      b = mix(b, ~std::uint64_t{p});
    }
    for (std::size_t v = 0; v < value_.size(); ++v) {
      const std::uint64_t x =
          has_[v] ? static_cast<std::uint64_t>(value_[v]) : 0x5bd1e995ULL;
      a = mix(a, x ^ has_[v]);
      b = mix(b, (x << 1) + 3 * has_[v] + 7);
    }
  }

  bool out_of_budget() {
    if (stats_.states >= options_.max_states) return true;
    if (options_.time_limit && (stats_.states & 1023) == 0) {
      const auto elapsed = std::chrono::steady_clock::now() - start_;
      if (elapsed > *options_.time_limit) return true;
    }
    return false;
  }

  // Called on arrival at a state. Pushes a frame unless the state is decided
  // right away.
  Status enter() {
    const std::size_t greedy = take_reads();
    if (reads_after_[pos_[focus_]] == 0) {
      for (std::size_t p = 0; p < ops_.size(); ++p) {
        for (std::size_t i = pos_[p]; i < ops_[p].size(); ++i) {
          path_.push_back(ops_[p][i]);
        }
      }
      return Status::kSuccess;
    }
    if (options_.count_bound && deficits_ > 0) {
      ++stats_.pruned;
      undo_reads(greedy);
      return Status::kFail;
    }
    Frame f;
    f.greedy = greedy;
    fingerprint(f.key_a, f.key_b);
    if (options_.memoize && memo_.contains(f.key_a, f.key_b)) {
      ++stats_.memo_hits;
      undo_reads(greedy);
      return Status::kFail;
    }
    if (out_of_budget()) return Status::kTimeout;
    ++stats_.states;

    // Writes that would enable the pending focus read go first.
    const Operation& need = trace_.op(next_read_[pos_[focus_]]);
    std::vector<std::uint32_t> later;
    for (std::uint32_t p = 0; p < ops_.size(); ++p) {
      if (pos_[p] == ops_[p].size()) continue;
      const Operation& o = trace_.op(ops_[p][pos_[p]]);
      if (!o.is_write()) continue;
      if (o.variable == need.variable && o.value == need.value) {
        f.candidates.push_back(p);
      } else {
        later.push_back(p);
      }
    }
    f.candidates.insert(f.candidates.end(), later.begin(), later.end());
    stack_.push_back(std::move(f));
    return Status::kFail;
  }

  const Trace& trace_;
  std::uint32_t focus_;
  OracleOptions options_;
  std::vector<std::vector<OpIndex>> ops_;
  std::vector<std::size_t> reads_after_;
  std::vector<OpIndex> next_read_;
  std::vector<std::uint32_t> pos_;
  std::vector<Value> value_;
  std::vector<std::uint8_t> has_;
  std::vector<Frame> stack_;
  Schedule path_;
  FingerprintSet memo_;
  OracleStats stats_;
  std::vector<std::uint32_t> pair_of_;
  std::vector<std::uint32_t> need_;
  std::vector<std::uint32_t> avail_;
  int deficits_ = 0;
  // Focus positions of the operations on each variable.
  std::vector<std::vector<std::size_t>> on_var_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

OracleRun run_oracle(const Trace& trace, ProcessId focus,
                     const OracleOptions& options) {
  if (raw(focus) >= trace.process_count()) {
    visible(trace, focus);  // throws the usual unknown-process error
  }
  return Search(trace, focus, options).run();
}

Verdict oracle_verify(const Trace& trace, ProcessId focus,
                      const OracleOptions& options) {
  return run_oracle(trace, focus, options).verdict;
}

}  // namespace pramcheck
