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

#include <algorithm>
#include <map>

#include "doctest.h"
#include "pramcheck/error.hpp"
#include "pramcheck/reduction.hpp"

using namespace pramcheck;

namespace {

std::vector<Value> values_of(const Trace& t, const char* process) {
  std::vector<Value> out;
  for (OpIndex o : t.history(t.process(process))) out.push_back(t.op(o).value);
  return out;
}

}  // namespace

TEST_CASE("reduction: two slots of seven") {
  const ThreePartitionInstance inst{2, 7, {3, 3, 2, 2, 2, 2}};
  const Trace t = reduce_3partition(inst);
  CHECK(t.size() == 104);
  CHECK(t.size() == 24 * inst.m + 4 * inst.bound * inst.m);
  CHECK(t.variable_count() == 1);
  CHECK(classify(t) == Variant::kSD);
  // (a a') x3, (b b') xB, (c c') x3 per slot: 2 * (6 + B) * m.
  CHECK(t.history(t.process("P0")).size() == 52);
  std::vector<std::size_t> item_lengths;
  for (int i = 1; i <= 6; ++i) {
    const std::string name = "Pa" + std::to_string(i);
    item_lengths.push_back(t.history(t.process(name)).size());
    const auto v = values_of(t, name.c_str());
    CHECK(v.front() == kValA2);
    CHECK(v.back() == kValC2);
    CHECK(std::count(v.begin(), v.end(), kValB2) ==
          static_cast<long>(inst.sizes[i - 1]));
  }
  CHECK(item_lengths == std::vector<std::size_t>{5, 5, 4, 4, 4, 4});
  CHECK(t.history(t.process("Pc1")).size() == 6);
  CHECK(t.history(t.process("Pc2")).size() == 14);
  CHECK(t.history(t.process("Pc3")).size() == 6);
  for (Value v : values_of(t, "Pc1")) CHECK(v == kValA);
  for (Value v : values_of(t, "Pc2")) CHECK(v == kValB);
  for (Value v : values_of(t, "Pc3")) CHECK(v == kValC);

  // One slot: (a a') x3, (b b') x7, (c c') x3.
  const auto p0 = values_of(t, "P0");
  std::vector<Value> slot;
  for (int k = 0; k < 3; ++k) slot.insert(slot.end(), {kValA, kValA2});
  for (int k = 0; k < 7; ++k) slot.insert(slot.end(), {kValB, kValB2});
  for (int k = 0; k < 3; ++k) slot.insert(slot.end(), {kValC, kValC2});
  CHECK(std::vector<Value>(p0.begin(), p0.begin() + 26) == slot);
  CHECK(std::vector<Value>(p0.begin() + 26, p0.end()) == slot);

  std::map<Value, int> seen;
  for (const Operation& o : t.operations()) ++seen[o.value];
  CHECK(seen.size() == 6);
}

TEST_CASE("reduction: single slot") {
  const ThreePartitionInstance inst{1, 6, {2, 2, 2}};
  const Trace t = reduce_3partition(inst);
  CHECK(t.size() == 48);
  CHECK(classify(t) == Variant::kSD);
}

TEST_CASE("reduction: invalid instance") {
  try {
    reduce_3partition({1, 4, {1, 1, 2}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidInstance);
  }
}

TEST_CASE("forward witness from a solution") {
  for (const ThreePartitionInstance& inst :
       {ThreePartitionInstance{1, 6, {2, 2, 2}},
        ThreePartitionInstance{2, 7, {3, 3, 2, 2, 2, 2}},
        ThreePartitionInstance{2, 9, {3, 3, 3, 3, 3, 3}}}) {
    const Trace t = reduce_3partition(inst);
    const auto part = solve_3partition(inst);
    REQUIRE(part);
    const Schedule s = forward_witness(t, inst, *part);
    CHECK(s.size() == t.size());
    CHECK(check_pram_witness(t, t.process("P0"), s).ok);
  }
}

TEST_CASE("forward witness rejects a wrong grouping") {
  const ThreePartitionInstance inst{2, 7, {3, 3, 2, 2, 2, 2}};
  const Trace t = reduce_3partition(inst);
  const Partition bad{{{0, 1, 2}}, {{3, 4, 5}}};
  CHECK_THROWS_AS(forward_witness(t, inst, bad), Error);
}

TEST_CASE("roundtrip on small instances") {
  SUBCASE("single slot") {
    const RoundtripReport r = reduction_roundtrip({1, 6, {2, 2, 2}});
    CHECK(r.feasible);
    CHECK(r.oracle == Outcome::kConsistent);
    REQUIRE(r.witness_ok);
    CHECK(*r.witness_ok);
    CHECK(r.trace_size == 48);
  }
  SUBCASE("two slots of seven") {
    const RoundtripReport r = reduction_roundtrip({2, 7, {3, 3, 2, 2, 2, 2}});
    CHECK(r.feasible);
    CHECK(r.oracle == Outcome::kConsistent);
    REQUIRE(r.witness_ok);
    CHECK(*r.witness_ok);
  }
}
