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

#include <limits>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "pramcheck/error.hpp"
#include "pramcheck/reduction.hpp"
#include "pramcheck/trace.hpp"
#include "pramcheck/trace_gen.hpp"
#include "reference.hpp"

using namespace pramcheck;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_trace(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_trace(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("parse: two operations on one process") {
  const Trace t = parse_trace("p1 W x 1\np1 R x 1");
  CHECK(t.size() == 2);
  CHECK(t.process_count() == 1);
  CHECK(t.op(0).is_write());
  CHECK(t.op(1).is_read());
  CHECK(t.op(1).value == 1);
  CHECK(t.history(t.process("p1")).size() == 2);
}

TEST_CASE("parse: empty input") {
  const Trace t = parse_trace("");
  CHECK(t.size() == 0);
  CHECK(t.process_count() == 0);
}

TEST_CASE("parse: comments, blank lines, CRLF and extreme values") {
  const Trace t = parse_trace(
      "# header\n\n  # indented comment\r\np0 W x -9223372036854775808\r\n"
      "p1 R x 9223372036854775807\n   \n");
  REQUIRE(t.size() == 2);
  CHECK(t.op(0).value == std::numeric_limits<Value>::min());
  CHECK(t.op(1).value == std::numeric_limits<Value>::max());
}

TEST_CASE("parse: malformed lines report the line number") {
  CHECK(code_of("p1 X x 1") == ErrorCode::kParse);
  CHECK(code_of("p1 W x") == ErrorCode::kParse);
  CHECK(code_of("p1 W x 1 2") == ErrorCode::kParse);
  CHECK(code_of("p1 W x one") == ErrorCode::kParse);
  CHECK(code_of("p1 W x 9223372036854775808") == ErrorCode::kParse);
  CHECK(code_of("p-1 W x 1") == ErrorCode::kParse);
  CHECK(code_of("p1 W 1x 1") == ErrorCode::kParse);
  CHECK(code_of("p1  W x 1") == ErrorCode::kParse);
  CHECK(parse_error_line("p1 W x 1\n\n# c\np1 R y z\n") == 4);
}

TEST_CASE("load: missing file is an I/O error") {
  try {
    load_trace("/nonexistent/trace.txt");
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("parse and serialize round-trip") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Trace t = reference::random_unique_trace(rng, 1 + i % 4, 1 + i % 3,
                                                   static_cast<std::size_t>(i % 30));
    const Trace back = parse_trace(serialize_trace(t));
    REQUIRE(back.size() == t.size());
    for (OpIndex o = 0; o < t.size(); ++o) {
      CHECK(back.describe(o) == t.describe(o));
      CHECK(back.program_position(o) == t.program_position(o));
    }
  }
}

TEST_CASE("classify") {
  CHECK(classify(parse_trace("p1 W x 1\np0 R x 1")) == Variant::kSU);
  CHECK(classify(parse_trace("p1 W x 1\np1 W y 1")) == Variant::kMU);
  CHECK(classify(parse_trace("p1 W x 1\np2 W x 1")) == Variant::kSD);
  CHECK(classify(parse_trace("p1 W x 1\np2 W x 1\np1 W y 2")) == Variant::kMD);
  const ThreePartitionInstance fig{2, 7, {3, 3, 2, 2, 2, 2}};
  CHECK(classify(reduce_3partition(fig)) == Variant::kSD);
}

TEST_CASE("visible keeps every write and the focus's own reads") {
  const Trace t = parse_trace("p1 W x 1\np2 R x 1\np0 R x 1");
  const VisibleProjection v0 = visible(t, t.process("p0"));
  CHECK(v0.ops == std::vector<OpIndex>{0, 2});
  const VisibleProjection v1 = visible(t, t.process("p1"));
  CHECK(v1.ops == std::vector<OpIndex>{0});

  const Trace writes = parse_trace("a W x 1\nb W y 2\na W y 3");
  for (std::size_t p = 0; p < writes.process_count(); ++p) {
    CHECK(visible(writes, static_cast<ProcessId>(p)).ops.size() == 3);
  }
}

TEST_CASE("visible accepts a registered process with no operations") {
  Trace t;
  t.add_process("idle");
  t.append("p1", OpKind::kWrite, "x", 1);
  CHECK(visible(t, t.process("idle")).ops == std::vector<OpIndex>{0});
  CHECK_THROWS_AS(t.process("ghost"), Error);
}

TEST_CASE("build_read_mapping") {
  SUBCASE("single match") {
    const Trace t = parse_trace("p1 W x 1\np0 R x 1");
    const ReadMapping m = build_read_mapping(t, visible(t, t.process("p0")));
    CHECK(m.dictating(1) == 0);
    CHECK(m.dictating(0) == kNoOp);
  }
  SUBCASE("read with no write") {
    const Trace t = parse_trace("p0 R x 1");
    try {
      build_read_mapping(t, visible(t, t.process("p0")));
      FAIL("no exception");
    } catch (const UnmatchedRead& e) {
      CHECK(e.read() == 0);
    }
  }
  SUBCASE("two candidate writes") {
    const Trace t = parse_trace("p1 W x 1\np2 W x 1\np0 R x 1");
    try {
      build_read_mapping(t, visible(t, t.process("p0")));
      FAIL("no exception");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kDuplicateValue);
    }
  }
  SUBCASE("invisible reads stay unmapped") {
    const Trace t = parse_trace("p1 W x 1\np2 R x 7\np0 R x 1");
    const ReadMapping m = build_read_mapping(t, visible(t, t.process("p0")));
    CHECK(m.dictating(1) == kNoOp);
    CHECK(m.dictating(2) == 0);
  }
}

TEST_CASE("describe") {
  const Trace t = parse_trace("p1 W x 1\np0 R y -4");
  CHECK(t.describe(0) == "p1 W x 1");
  CHECK(t.describe(1) == "p0 R y -4");
}

TEST_CASE("reduced trace of the six-item instance has 104 operations") {
  const ThreePartitionInstance fig{2, 7, {3, 3, 2, 2, 2, 2}};
  CHECK(reduce_3partition(fig).size() == 104);
}
