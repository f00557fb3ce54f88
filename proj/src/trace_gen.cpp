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

#include "pramcheck/trace_gen.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pramcheck/error.hpp"

namespace pramcheck {
namespace {

// Uniform draw in [0, n) by multiply-shift; the standard distributions are
// not bit-identical across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }
  bool chance(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::mt19937_64 engine_;
};

struct PendingWrite {
  std::size_t var;
  Value value;
};

Trace rebuild(const Trace& trace, const std::vector<Operation>& ops) {
  Trace out;
  for (std::size_t p = 0; p < trace.process_count(); ++p) {
    out.add_process(trace.process_name(static_cast<ProcessId>(p)));
  }
  for (std::size_t v = 0; v < trace.variable_count(); ++v) {
    out.add_variable(trace.variable_name(static_cast<VariableId>(v)));
  }
  for (const Operation& o : ops) {
    out.append(o.process, o.kind, o.variable, o.value);
  }
  return out;
}

}  // namespace

const char* to_string(ValuePolicy p) {
  return p == ValuePolicy::kUnique ? "unique" : "duplicate";
}

std::optional<ValuePolicy> parse_value_policy(std::string_view name) {
  if (name == "unique") return ValuePolicy::kUnique;
  if (name == "duplicate") return ValuePolicy::kDuplicate;
  return std::nullopt;
}

Trace gen_pram_trace(std::uint64_t seed, const GenParams& params) {
  Trace trace;
  const std::size_t procs = params.processes;
  const std::size_t vars = params.vars;
  std::vector<ProcessId> pid;
  for (std::size_t p = 0; p < procs; ++p) {
    pid.push_back(trace.add_process("p" + std::to_string(p)));
  }
  if (params.ops == 0 || procs == 0 || vars == 0) return trace;
  std::vector<VariableId> vid;
  for (std::size_t v = 0; v < vars; ++v) {
    vid.push_back(trace.add_variable("x" + std::to_string(v)));
  }

  Rng rng(seed);
  // replica[p][v]: value currently seen by p, if any.
  std::vector<std::vector<std::optional<Value>>> replica(
      procs, std::vector<std::optional<Value>>(vars));
  // channel[q][p]: writes of q not yet applied at p, oldest first.
  std::vector<std::vector<std::deque<PendingWrite>>> channel(
      procs, std::vector<std::deque<PendingWrite>>(procs));
  std::vector<Value> counter(vars, 0);

  for (std::size_t emitted = 0; emitted < params.ops;) {
    const std::size_t p = rng.below(procs);
    if (rng.chance(params.delivery_rate)) {
      std::vector<std::size_t> senders;
      for (std::size_t q = 0; q < procs; ++q) {
        if (!channel[q][p].empty()) senders.push_back(q);
      }
      if (!senders.empty()) {
        const std::size_t q = senders[rng.below(senders.size())];
        const PendingWrite w = channel[q][p].front();
        channel[q][p].pop_front();
        replica[p][w.var] = w.value;
      }
    }
    std::vector<std::size_t> readable;
    for (std::size_t v = 0; v < vars; ++v) {
      if (replica[p][v]) readable.push_back(v);
    }
    if (!readable.empty() && rng.chance(params.read_fraction)) {
      const std::size_t v = readable[rng.below(readable.size())];
      trace.append(pid[p], OpKind::kRead, vid[v], *replica[p][v]);
    } else {
      const std::size_t v = rng.below(vars);
      const Value value =
          params.policy == ValuePolicy::kUnique
              ? ++counter[v]
              : 1 + static_cast<Value>(rng.below(static_cast<std::size_t>(
                        std::max<Value>(params.duplicate_range, 1))));
      trace.append(pid[p], OpKind::kWrite, vid[v], value);
      replica[p][v] = value;
      for (std::size_t q = 0; q < procs; ++q) {
        if (q != p) channel[p][q].push_back(PendingWrite{v, value});
      }
    }
    ++emitted;
  }
  return trace;
}

const char* to_string(MutationKind k) {
  switch (k) {
    case MutationKind::kSwapWriteValues: return "swap-write-values";
    case MutationKind::kReorderReads: return "reorder-reads";
    case MutationKind::kRetargetRead: return "retarget-read";
  }
  return "?";
}

std::optional<MutationKind> parse_mutation_kind(std::string_view name) {
  for (MutationKind k :
       {MutationKind::kSwapWriteValues, MutationKind::kReorderReads,
        MutationKind::kRetargetRead}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

Trace mutate_trace(std::uint64_t seed, const Trace& trace, MutationKind kind) {
  if (trace.empty()) {
    throw Error(ErrorCode::kInapplicable, "cannot mutate an empty trace");
  }
  Rng rng(seed);
  std::vector<Operation> ops(trace.operations().begin(),
                             trace.operations().end());
  switch (kind) {
    case MutationKind::kSwapWriteValues: {
      // Pairs of same-variable writes with different values.
      std::vector<std::pair<OpIndex, OpIndex>> pairs;
      for (const Operation& a : ops) {
        if (!a.is_write()) continue;
        for (const Operation& b : ops) {
          if (b.index > a.index && b.is_write() && b.variable == a.variable &&
              b.value != a.value) {
            pairs.emplace_back(a.index, b.index);
          }
        }
      }
      if (pairs.empty()) {
        throw Error(ErrorCode::kInapplicable,
                    "no two writes on one variable carry different values");
      }
      const auto [a, b] = pairs[rng.below(pairs.size())];
      std::swap(ops[a].value, ops[b].value);
      break;
    }
    case MutationKind::kReorderReads: {
      std::vector<ProcessId> candidates;
      for (std::size_t p = 0; p < trace.process_count(); ++p) {
        std::size_t reads = 0;
        for (OpIndex o : trace.history(static_cast<ProcessId>(p))) {
          reads += trace.op(o).is_read();
        }
        if (reads >= 2) candidates.push_back(static_cast<ProcessId>(p));
      }
      if (candidates.empty()) {
        throw Error(ErrorCode::kInapplicable, "no process has two reads");
      }
      const ProcessId p = candidates[rng.below(candidates.size())];
      std::vector<OpIndex> reads;
      for (OpIndex o : trace.history(p)) {
        if (trace.op(o).is_read()) reads.push_back(o);
      }
      const std::size_t i = rng.below(reads.size());
      std::size_t j = rng.below(reads.size() - 1);
      if (j >= i) ++j;
      // Swapping contents moves each read to the other's program position.
      std::swap(ops[reads[i]].variable, ops[reads[j]].variable);
      std::swap(ops[reads[i]].value, ops[reads[j]].value);
      break;
    }
    case MutationKind::kRetargetRead: {
      std::vector<OpIndex> reads;
      for (const Operation& o : ops) {
        if (o.is_read()) reads.push_back(o.index);
      }
      if (reads.empty()) {
        throw Error(ErrorCode::kInapplicable, "trace has no reads");
      }
      Operation& r = ops[reads[rng.below(reads.size())]];
      std::vector<Value> others;
      Value top = 0;
      for (const Operation& o : ops) {
        if (!o.is_write() || o.variable != r.variable) continue;
        top = std::max(top, o.value);
        if (o.value != r.value) others.push_back(o.value);
      }
      std::sort(others.begin(), others.end());
      others.erase(std::unique(others.begin(), others.end()), others.end());
      if (!others.empty() && rng.chance(0.5)) {
        r.value = others[rng.below(others.size())];
      } else {
        r.value = std::max(top, r.value) + 1;
      }
      break;
    }
  }
  return rebuild(trace, ops);
}

}  // namespace pramcheck
