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
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "pramcheck/error.hpp"
#include "pramcheck/legality.hpp"
#include "pramcheck/rw_closure.hpp"
#include "reference.hpp"

using namespace pramcheck;

TEST_CASE("the 19-operation closure witness is legal") {
  const auto eq = fixtures::closure_example();
  REQUIRE(eq.schedule.size() == 19);
  std::vector<OpIndex> all(eq.trace.size());
  for (OpIndex i = 0; i < all.size(); ++i) all[i] = i;
  CHECK(is_legal(eq.trace, eq.schedule, all));
}

TEST_CASE("legality basics") {
  const Trace t = parse_trace("p1 W x 1\np1 W x 2\np0 R x 1");
  const Schedule bad{0, 1, 2};
  const CheckResult r = check_legal(t, bad);
  CHECK_FALSE(r.ok);
  CHECK(r.culprit == 2);
  CHECK(r.reason.find("follows write #1") != std::string::npos);
  CHECK(check_legal(t, Schedule{}).ok);
  CHECK(check_legal(t, Schedule{1, 0, 2}).ok);
}

TEST_CASE("a read with no preceding write is illegal") {
  const Trace t = parse_trace("p1 W x 1\np0 R x 1");
  const CheckResult r = check_legal(t, Schedule{1, 0});
  CHECK_FALSE(r.ok);
  CHECK(r.culprit == 1);
  CHECK(r.reason.find("no preceding write") != std::string::npos);
}

TEST_CASE("schedules that are not permutations") {
  const Trace t = parse_trace("p1 W x 1\np0 R x 1");
  const auto code = [&](const Schedule& s, std::vector<OpIndex> ops) {
    try {
      is_legal(t, s, ops);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code({0, 0}, {0, 1}) == ErrorCode::kNotAPermutation);
  CHECK(code({0, 5}, {0, 1}) == ErrorCode::kNotAPermutation);
  CHECK(code({0}, {0, 1}) == ErrorCode::kNotAPermutation);
  CHECK(code({0, 1}, {0}) == ErrorCode::kNotAPermutation);
}

TEST_CASE("respects") {
  const std::vector<OrderPair> none;
  CHECK(respects(Schedule{3, 1, 2}, none));
  const std::vector<OrderPair> wr{{0, 1}};
  CHECK_FALSE(respects(Schedule{1, 0}, wr));
  CHECK(respects(Schedule{0, 1}, wr));
}

TEST_CASE("closure witness respects write-to pairs recomputed by value") {
  const auto eq = fixtures::closure_example();
  std::vector<OrderPair> pairs;
  for (const auto& r : eq.trace.operations()) {
    if (!r.is_read()) continue;
    for (const auto& w : eq.trace.operations()) {
      if (w.is_write() && w.variable == r.variable && w.value == r.value) {
        pairs.emplace_back(w.index, r.index);
      }
    }
  }
  CHECK(pairs.size() == 7);
  CHECK(respects(eq.schedule, pairs));
  CHECK(schedule_write_to_pairs(eq.trace, eq.schedule).size() == 7);
}

TEST_CASE("check_pram_witness") {
  SUBCASE("closure witness on its own trace") {
    const auto eq = fixtures::closure_example();
    CHECK(check_pram_witness(eq.trace, eq.trace.process("p0"), eq.schedule).ok);
  }
  SUBCASE("focus program order violated") {
    const Trace t = parse_trace("p1 W x 1\np1 W y 1\np0 R y 1\np0 R x 1");
    const ProcessId p0 = t.process("p0");
    CHECK(check_pram_witness(t, p0, Schedule{0, 1, 2, 3}).ok);
    CHECK_FALSE(check_pram_witness(t, p0, Schedule{0, 1, 3, 2}).ok);
    CHECK_FALSE(check_pram_witness(t, p0, Schedule{1, 0, 2, 3}).ok);
  }
  SUBCASE("missing or invisible operations") {
    const Trace t = parse_trace("p1 W x 1\np2 R x 1\np0 R x 1");
    const ProcessId p0 = t.process("p0");
    CHECK(check_pram_witness(t, p0, Schedule{0, 2}).ok);
    CHECK_FALSE(check_pram_witness(t, p0, Schedule{0}).ok);
    CHECK_FALSE(check_pram_witness(t, p0, Schedule{0, 1, 2}).ok);
  }
  SUBCASE("witness from the closure checker") {
    const Trace t =
        parse_trace("p1 W x 1\np1 W y 1\np2 W x 2\np0 R y 1\np0 R x 2");
    const Verdict v = verify_rw_closure(t, t.process("p0"));
    REQUIRE(v.consistent());
    CHECK(check_pram_witness(t, t.process("p0"), v.witness).ok);
  }
}

TEST_CASE("the first violation does not move when the schedule grows") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const Trace t = reference::random_unique_trace(rng, 3, 2, 12);
    Schedule s(t.size());
    for (OpIndex o = 0; o < s.size(); ++o) s[o] = o;
    std::shuffle(s.begin(), s.end(), rng);
    const CheckResult full = check_legal(t, s);
    for (std::size_t len = 0; len <= s.size(); ++len) {
      const CheckResult prefix =
          check_legal(t, std::span<const OpIndex>(s.data(), len));
      if (!prefix.ok) {
        CHECK(prefix.culprit == full.culprit);
        break;
      }
    }
  }
}

TEST_CASE("schedule text format") {
  const Schedule s = parse_schedule("# witness\n3\n\n1\r\n 2 \n0");
  CHECK(s == Schedule{3, 1, 2, 0});
  CHECK(parse_schedule(serialize_schedule(s)) == s);
  CHECK_THROWS_AS(parse_schedule("1\nx\n"), ParseError);
  CHECK_THROWS_AS(parse_schedule("-1\n"), ParseError);
  CHECK(parse_schedule("").empty());
}
