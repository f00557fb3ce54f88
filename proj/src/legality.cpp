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

#include "pramcheck/legality.hpp"

#include <algorithm>
#include <charconv>

#include "pramcheck/error.hpp"

namespace pramcheck {
namespace {

// Position of each operation in `sched`, kNoOp when absent.
std::vector<std::size_t> positions_of(const Trace& trace,
                                      std::span<const OpIndex> sched) {
  std::vector<std::size_t> pos(trace.size(), kNoOp);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const OpIndex o = sched[i];
    if (o >= trace.size()) {
      throw Error(ErrorCode::kNotAPermutation,
                  "schedule entry " + std::to_string(o) + " out of range");
    }
    if (pos[o] != kNoOp) {
      throw Error(ErrorCode::kNotAPermutation,
                  "operation #" + std::to_string(o) + " scheduled twice");
    }
    pos[o] = i;
  }
  return pos;
}

}  // namespace

CheckResult check_legal(const Trace& trace, std::span<const OpIndex> sched) {
  positions_of(trace, sched);
  std::vector<OpIndex> latest(trace.variable_count(), kNoOp);
  for (OpIndex index : sched) {
    const Operation& o = trace.op(index);
    if (o.is_write()) {
      latest[raw(o.variable)] = index;
      continue;
    }
    const OpIndex w = latest[raw(o.variable)];
    if (w == kNoOp) {
      return CheckResult::failure("read #" + std::to_string(index) + " (" +
                                      trace.describe(index) +
                                      ") has no preceding write",
                                  index);
    }
    if (trace.op(w).value != o.value) {
      return CheckResult::failure(
          "read #" + std::to_string(index) + " (" + trace.describe(index) +
              ") follows write #" + std::to_string(w) + " (" +
              trace.describe(w) + ")",
          index);
    }
  }
  return {};
}

bool is_legal(const Trace& trace, std::span<const OpIndex> sched,
              std::span<const OpIndex> ops) {
  const auto pos = positions_of(trace, sched);
  if (sched.size() != ops.size()) {
    throw Error(ErrorCode::kNotAPermutation,
                "schedule has " + std::to_string(sched.size()) +
                    " entries for " + std::to_string(ops.size()) +
                    " operations");
  }
  for (OpIndex o : ops) {
    if (o >= trace.size() || pos[o] == kNoOp) {
      throw Error(ErrorCode::kNotAPermutation,
                  "operation #" + std::to_string(o) + " missing from schedule");
    }
  }
  return check_legal(trace, sched).ok;
}

bool respects(std::span<const OpIndex> sched,
              std::span<const OrderPair> order) {
  OpIndex bound = 0;
  for (OpIndex o : sched) bound = std::max(bound, o + 1);
  for (const auto& [a, b] : order) bound = std::max({bound, a + 1, b + 1});
  std::vector<std::size_t> pos(bound, kNoOp);
  for (std::size_t i = 0; i < sched.size(); ++i) pos[sched[i]] = i;
  return std::all_of(order.begin(), order.end(), [&](const OrderPair& p) {
    return pos[p.first] != kNoOp && pos[p.second] != kNoOp &&
           pos[p.first] < pos[p.second];
  });
}

std::vector<OrderPair> program_order_pairs(const Trace& trace,
                                           std::span<const OpIndex> ops) {
  std::vector<bool> member(trace.size(), false);
  for (OpIndex o : ops) member.at(o) = true;
  std::vector<OrderPair> pairs;
  for (std::size_t p = 0; p < trace.process_count(); ++p) {
    OpIndex prev = kNoOp;
    for (OpIndex o : trace.history(static_cast<ProcessId>(p))) {
      if (!member[o]) continue;
      if (prev != kNoOp) pairs.emplace_back(prev, o);
      prev = o;
    }
  }
  return pairs;
}

std::vector<OrderPair> schedule_write_to_pairs(
    const Trace& trace, std::span<const OpIndex> sched) {
  std::vector<OpIndex> latest(trace.variable_count(), kNoOp);
  std::vector<OrderPair> pairs;
  for (OpIndex index : sched) {
    const Operation& o = trace.op(index);
    if (o.is_write()) {
      latest[raw(o.variable)] = index;
    } else if (latest[raw(o.variable)] != kNoOp) {
      pairs.emplace_back(latest[raw(o.variable)], index);
    }
  }
  return pairs;
}

CheckResult check_pram_witness(const Trace& trace, ProcessId focus,
                               std::span<const OpIndex> sched) {
  if (raw(focus) >= trace.process_count()) {
    return CheckResult::failure("unknown focus process");
  }
  const VisibleProjection projection = visible(trace, focus);
  std::vector<std::size_t> pos(trace.size(), kNoOp);
  for (std::size_t i = 0; i < sched.size(); ++i) {
    const OpIndex o = sched[i];
    if (o >= trace.size()) {
      return CheckResult::failure(
          "schedule entry " + std::to_string(o) + " out of range");
    }
    if (pos[o] != kNoOp) {
      return CheckResult::failure(
          "operation #" + std::to_string(o) + " scheduled twice", o);
    }
    const Operation& op = trace.op(o);
    if (op.is_read() && op.process != focus) {
      return CheckResult::failure("operation #" + std::to_string(o) +
                                      " is not visible to " +
                                      trace.process_name(focus),
                                  o);
    }
    pos[o] = i;
  }
  for (OpIndex o : projection.ops) {
    if (pos[o] == kNoOp) {
      return CheckResult::failure(
          "visible operation #" + std::to_string(o) + " not scheduled", o);
    }
  }

  if (CheckResult legal = check_legal(trace, sched); !legal) return legal;

  for (const auto& [a, b] : program_order_pairs(trace, projection.ops)) {
    if (pos[a] > pos[b]) {
      return CheckResult::failure("program order #" + std::to_string(a) +
                                      " -> #" + std::to_string(b) +
                                      " violated",
                                  b);
    }
  }
  for (const auto& [w, r] : schedule_write_to_pairs(trace, sched)) {
    if (pos[w] > pos[r]) {
      return CheckResult::failure("write-to order #" + std::to_string(w) +
                                      " -> #" + std::to_string(r) +
                                      " violated",
                                  r);
    }
  }
  return {};
}

Schedule parse_schedule(std::string_view text) {
  Schedule sched;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
      line.remove_prefix(1);
    }
    if (line.empty() || line.front() == '#') continue;
    OpIndex value = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(),
                                     value);
    if (ec != std::errc() || ptr != line.data() + line.size()) {
      throw ParseError(line_no, "expected an operation index, got '" +
                                    std::string(line) + "'");
    }
    sched.push_back(value);
  }
  return sched;
}

std::string serialize_schedule(std::span<const OpIndex> sched) {
  std::string out;
  for (OpIndex o : sched) {
    out += std::to_string(o);
    out += '\n';
  }
  return out;
}

}  // namespace pramcheck
