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

#include "doctest.h"
#include "pramcheck/error.hpp"
#include "pramcheck/oracle.hpp"
#include "pramcheck/read_centric.hpp"
#include "pramcheck/rw_closure.hpp"
#include "pramcheck/trace_gen.hpp"
#include "pramcheck/verify.hpp"

using namespace pramcheck;

TEST_CASE("generator: deterministic in the seed") {
  GenParams params;
  params.ops = 60;
  CHECK(serialize_trace(gen_pram_trace(5, params)) ==
        serialize_trace(gen_pram_trace(5, params)));
  CHECK(serialize_trace(gen_pram_trace(5, params)) !=
        serialize_trace(gen_pram_trace(6, params)));
}

TEST_CASE("generator: empty trace") {
  GenParams params;
  params.ops = 0;
  const Trace t = gen_pram_trace(1, params);
  CHECK(t.empty());
  for (std::size_t p = 0; p < t.process_count(); ++p) {
    CHECK(verify_rw_closure(t, static_cast<ProcessId>(p)).consistent());
  }
}

TEST_CASE("generator: unique policy output is accepted") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    GenParams params;
    params.processes = 2 + seed % 4;
    params.vars = 1 + seed % 3;
    params.ops = 5 + seed % 60;
    params.delivery_rate = 0.1 + 0.2 * static_cast<double>(seed % 4);
    const Trace t = gen_pram_trace(seed, params);
    CHECK(t.size() == params.ops);
    CHECK(!has_duplicates(classify(t)));
    for (std::size_t p = 0; p < t.process_count(); ++p) {
      const ProcessId focus = static_cast<ProcessId>(p);
      CHECK(verify_rw_closure(t, focus).consistent());
      CHECK(verify_read_centric(t, focus).consistent());
    }
  }
}

TEST_CASE("generator: duplicate policy output is accepted by the oracle") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenParams params;
    params.policy = ValuePolicy::kDuplicate;
    params.processes = 2 + seed % 2;
    params.ops = 4 + seed % 9;
    const Trace t = gen_pram_trace(seed, params);
    for (std::size_t p = 0; p < t.process_count(); ++p) {
      CHECK(oracle_verify(t, static_cast<ProcessId>(p)).consistent());
    }
  }
}

TEST_CASE("mutation: reordering reads of the FIFO example") {
  const Trace t = parse_trace("p1 W x 1\np1 W x 2\np0 R x 1\np0 R x 2");
  const Trace m = mutate_trace(0, t, MutationKind::kReorderReads);
  CHECK(serialize_trace(m) ==
        serialize_trace(parse_trace("p1 W x 1\np1 W x 2\np0 R x 2\np0 R x 1")));
  CHECK(verify_read_centric(m, m.process("p0")).outcome ==
        Outcome::kInconsistent);
}

TEST_CASE("mutation: inapplicable kinds") {
  auto code_of = [](const Trace& t, MutationKind k) {
    try {
      mutate_trace(1, t, k);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  const Trace writes = parse_trace("p1 W x 1\np1 W y 1");
  CHECK(code_of(writes, MutationKind::kReorderReads) == ErrorCode::kInapplicable);
  CHECK(code_of(writes, MutationKind::kRetargetRead) == ErrorCode::kInapplicable);
  CHECK(code_of(writes, MutationKind::kSwapWriteValues) ==
        ErrorCode::kInapplicable);
  CHECK(code_of(Trace{}, MutationKind::kSwapWriteValues) ==
        ErrorCode::kInapplicable);
}

TEST_CASE("mutation: retargeting to a missing value") {
  const Trace t = parse_trace("p1 W x 1\np0 R x 1");
  // With a single write the only retarget is a fresh value.
  const Trace m = mutate_trace(3, t, MutationKind::kRetargetRead);
  const Verdict v = verify_read_centric(m, m.process("p0"));
  CHECK(v.reason == Reason::kNoDictatingWrite);
}

TEST_CASE("mutation: names are preserved and both verdicts occur") {
  std::size_t accepted = 0, rejected = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenParams params;
    params.processes = 3;
    params.ops = 16;
    const Trace t = gen_pram_trace(seed, params);
    Trace m;
    try {
      m = mutate_trace(seed, t, static_cast<MutationKind>(seed % 3));
    } catch (const Error&) {
      continue;
    }
    REQUIRE(m.process_count() == t.process_count());
    for (std::size_t p = 0; p < t.process_count(); ++p) {
      CHECK(m.process_name(static_cast<ProcessId>(p)) ==
            t.process_name(static_cast<ProcessId>(p)));
    }
    bool ok = true;
    for (const VerifyResult& r : verify_all(m)) ok = ok && r.verdict.consistent();
    ++(ok ? accepted : rejected);
  }
  CHECK(accepted > 0);
  CHECK(rejected > 0);
}

TEST_CASE("verify: algorithm selection") {
  const Trace unique = parse_trace("p1 W x 1\np0 R x 1");
  const Trace dup = parse_trace("p1 W x 1\np2 W x 1\np0 R x 1");
  CHECK(resolve_algorithm(unique, Algorithm::kAuto) == Algorithm::kReadCentric);
  CHECK(resolve_algorithm(dup, Algorithm::kAuto) == Algorithm::kOracle);
  CHECK(resolve_algorithm(dup, Algorithm::kOracle) == Algorithm::kOracle);
  CHECK_THROWS_AS(resolve_algorithm(dup, Algorithm::kRwClosure), Error);
  CHECK(verify(dup, dup.process("p0")).verdict.algorithm == Algorithm::kOracle);
  CHECK(verify(unique, unique.process("p0")).verdict.algorithm ==
        Algorithm::kReadCentric);
}

TEST_CASE("verify: graph dump and per-process results") {
  const Trace t = parse_trace("p1 W x 1\np1 W x 2\np0 R x 2\np0 R x 1");
  VerifyOptions opts;
  opts.algorithm = Algorithm::kRwClosure;
  opts.dump_graph = true;
  const VerifyResult r = verify(t, t.process("p0"), opts);
  CHECK(r.graph_dump.find("0 1 PO") != std::string::npos);
  CHECK(r.graph_dump.find("1 0 WpW") != std::string::npos);
  const auto all = verify_all(t, opts);
  REQUIRE(all.size() == 2);
  CHECK(all[0].verdict.focus == t.process("p1"));
  CHECK(all[0].verdict.consistent());
  CHECK_FALSE(all[1].verdict.consistent());
  opts.algorithm = Algorithm::kOracle;
  CHECK(verify(t, t.process("p0"), opts).graph_dump.empty());
}

TEST_CASE("verify: names round-trip") {
  for (Algorithm a : {Algorithm::kRwClosure, Algorithm::kReadCentric,
                      Algorithm::kOracle, Algorithm::kAuto}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK_FALSE(parse_algorithm("closure"));
  for (MutationKind k : {MutationKind::kSwapWriteValues,
                         MutationKind::kReorderReads,
                         MutationKind::kRetargetRead}) {
    CHECK(parse_mutation_kind(to_string(k)) == k);
  }
  CHECK(parse_value_policy("duplicate") == ValuePolicy::kDuplicate);
}
