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

#include "pramcheck/reduction.hpp"

#include <string>
#include <vector>

#include "pramcheck/error.hpp"

namespace pramcheck {
namespace {

std::string item_process(std::size_t i) { return "Pa" + std::to_string(i + 1); }

// Next unscheduled operation of each process.
class Cursor {
 public:
  Cursor(const Trace& trace, const std::string& process)
      : ops_(trace.history(trace.process(process))) {}

  OpIndex next() {
    if (at_ == ops_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "partition does not fit the reduced trace");
    }
    return ops_[at_++];
  }

 private:
  std::span<const OpIndex> ops_;
  std::size_t at_ = 0;
};

}  // namespace

Trace reduce_3partition(const ThreePartitionInstance& inst) {
  validate_instance(inst);
  Trace t;
  const std::size_t items = inst.sizes.size();
  t.add_process("P0");
  for (std::size_t i = 0; i < items; ++i) t.add_process(item_process(i));
  for (const char* name : {"Pc1", "Pc2", "Pc3"}) t.add_process(name);
  t.add_variable("x");

  auto pairs = [&](Value first, Value second, std::uint64_t times) {
    for (std::uint64_t k = 0; k < times; ++k) {
      t.append("P0", OpKind::kRead, "x", first);
      t.append("P0", OpKind::kRead, "x", second);
    }
  };
  for (std::uint64_t slot = 0; slot < inst.m; ++slot) {
    pairs(kValA, kValA2, 3);
    pairs(kValB, kValB2, inst.bound);
    pairs(kValC, kValC2, 3);
  }
  for (std::size_t i = 0; i < items; ++i) {
    const std::string p = item_process(i);
    t.append(p, OpKind::kWrite, "x", kValA2);
    for (std::uint64_t k = 0; k < inst.sizes[i]; ++k) {
      t.append(p, OpKind::kWrite, "x", kValB2);
    }
    t.append(p, OpKind::kWrite, "x", kValC2);
  }
  for (std::uint64_t k = 0; k < 3 * inst.m; ++k) {
    t.append("Pc1", OpKind::kWrite, "x", kValA);
  }
  for (std::uint64_t k = 0; k < inst.m * inst.bound; ++k) {
    t.append("Pc2", OpKind::kWrite, "x", kValB);
  }
  for (std::uint64_t k = 0; k < 3 * inst.m; ++k) {
    t.append("Pc3", OpKind::kWrite, "x", kValC);
  }
  return t;
}

Schedule forward_witness(const Trace& reduced,
                         const ThreePartitionInstance& inst,
                         const Partition& partition) {
  if (partition.size() != inst.m) {
    throw Error(ErrorCode::kInvalidArgument, "partition needs m groups");
  }
  Cursor p0(reduced, "P0");
  Cursor c1(reduced, "Pc1");
  Cursor c2(reduced, "Pc2");
  Cursor c3(reduced, "Pc3");
  std::vector<Cursor> item;
  for (std::size_t i = 0; i < inst.sizes.size(); ++i) {
    item.emplace_back(reduced, item_process(i));
  }

  Schedule s;
  for (const auto& group : partition) {
    std::uint64_t sum = 0;
    for (std::size_t i : group) sum += inst.sizes.at(i);
    if (sum != inst.bound) {
      throw Error(ErrorCode::kInvalidArgument, "group does not sum to B");
    }
    auto round = [&](Cursor& writer, Cursor& second) {
      s.push_back(writer.next());
      s.push_back(p0.next());
      s.push_back(second.next());
      s.push_back(p0.next());
    };
    for (std::size_t i : group) round(c1, item[i]);
    for (std::size_t i : group) {
      for (std::uint64_t k = 0; k < inst.sizes[i]; ++k) round(c2, item[i]);
    }
    for (std::size_t i : group) round(c3, item[i]);
  }
  return s;
}

RoundtripReport reduction_roundtrip(const ThreePartitionInstance& inst,
                                    const OracleOptions& options) {
  RoundtripReport report;
  report.partition = solve_3partition(inst);
  report.feasible = report.partition.has_value();
  const Trace reduced = reduce_3partition(inst);
  report.trace_size = reduced.size();
  const ProcessId focus = reduced.process("P0");
  const OracleRun run = run_oracle(reduced, focus, options);
  report.oracle = run.verdict.outcome;
  report.oracle_stats = run.stats;
  if (report.partition) {
    const Schedule s = forward_witness(reduced, inst, *report.partition);
    report.witness_ok = check_pram_witness(reduced, focus, s).ok;
  }
  return report;
}

}  // namespace pramcheck
