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

#include "pramcheck/pramcheck.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pramcheck/error.hpp"
#include "pramcheck/legality.hpp"
#include "pramcheck/reduction.hpp"
#include "pramcheck/three_partition.hpp"
#include "pramcheck/trace.hpp"
#include "pramcheck/trace_gen.hpp"
#include "pramcheck/verify.hpp"

struct pram_trace {
  pramcheck::Trace trace;
};

struct pram_verdict {
  pramcheck::Verdict verdict;
  std::vector<pram_edge_tag> cycle_tags;
  std::string cycle_text;
  std::string graph_dump;
};

namespace {

using namespace pramcheck;

thread_local std::string last_error;

pram_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return PRAM_E_PARSE;
    case ErrorCode::kIo: return PRAM_E_IO;
    case ErrorCode::kUnknownProcess: return PRAM_E_UNKNOWN_PROCESS;
    case ErrorCode::kDuplicateValue: return PRAM_E_DUPLICATE_VALUE;
    case ErrorCode::kUnmatchedRead: return PRAM_E_UNMATCHED_READ;
    case ErrorCode::kNotAPermutation: return PRAM_E_NOT_A_PERMUTATION;
    case ErrorCode::kInvalidInstance: return PRAM_E_INVALID_INSTANCE;
    case ErrorCode::kInapplicable: return PRAM_E_INAPPLICABLE;
    case ErrorCode::kCycleFound: return PRAM_E_CYCLE;
    case ErrorCode::kInvalidArgument: return PRAM_E_INVALID_ARGUMENT;
    case ErrorCode::kInternal: return PRAM_E_INTERNAL;
  }
  return PRAM_E_INTERNAL;
}

pram_status fail(pram_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body` with every exception turned into a status code.
template <typename F>
pram_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return PRAM_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PRAM_E_NO_MEMORY, "out of memory");
  } catch (const std::exception& e) {
    return fail(PRAM_E_INTERNAL, e.what());
  } catch (...) {
    return fail(PRAM_E_INTERNAL, "unknown failure");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

uint32_t* copy_ops(const std::vector<OpIndex>& ops) {
  uint32_t* out =
      static_cast<uint32_t*>(std::malloc(sizeof(uint32_t) * (ops.size() + 1)));
  if (out == nullptr) throw std::bad_alloc();
  std::copy(ops.begin(), ops.end(), out);
  return out;
}

ProcessId checked_process(const Trace& trace, size_t process) {
  if (process >= trace.process_count()) {
    throw Error(ErrorCode::kUnknownProcess,
                "process #" + std::to_string(process) + " does not exist");
  }
  return static_cast<ProcessId>(process);
}

ThreePartitionInstance make_instance(uint64_t m, uint64_t bound,
                                     const uint64_t* sizes, size_t count) {
  require(sizes != nullptr || count == 0, "sizes is NULL");
  ThreePartitionInstance inst;
  inst.m = m;
  inst.bound = bound;
  inst.sizes.assign(sizes, sizes + count);
  return inst;
}

pram_edge_tag c_tag(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::kProgramOrder: return PRAM_EDGE_PROGRAM_ORDER;
    case EdgeTag::kWriteTo: return PRAM_EDGE_WRITE_TO;
    case EdgeTag::kRuleC: return PRAM_EDGE_RULE_C;
  }
  return PRAM_EDGE_PROGRAM_ORDER;
}

}  // namespace

extern "C" {

void pram_verify_options_init(pram_verify_options* options) {
  if (options == nullptr) return;
  *options = pram_verify_options{};
}

const char* pram_last_error(void) { return last_error.c_str(); }

const char* pram_status_string(pram_status status) {
  switch (status) {
    case PRAM_OK: return "ok";
    case PRAM_E_PARSE: return "parse error";
    case PRAM_E_IO: return "i/o error";
    case PRAM_E_UNKNOWN_PROCESS: return "unknown process";
    case PRAM_E_DUPLICATE_VALUE: return "duplicate write values";
    case PRAM_E_UNMATCHED_READ: return "read without a dictating write";
    case PRAM_E_NOT_A_PERMUTATION: return "not a permutation";
    case PRAM_E_INVALID_INSTANCE: return "invalid 3-partition instance";
    case PRAM_E_INAPPLICABLE: return "mutation not applicable";
    case PRAM_E_CYCLE: return "cycle";
    case PRAM_E_INVALID_ARGUMENT: return "invalid argument";
    case PRAM_E_INTERNAL: return "internal error";
    case PRAM_E_NO_MEMORY: return "out of memory";
  }
  return "unknown status";
}

const char* pram_algorithm_string(pram_algorithm algorithm) {
  return to_string(static_cast<Algorithm>(algorithm));
}
const char* pram_outcome_string(pram_outcome outcome) {
  return to_string(static_cast<Outcome>(outcome));
}
const char* pram_reason_string(pram_reason reason) {
  return to_string(static_cast<Reason>(reason));
}
const char* pram_variant_string(pram_variant variant) {
  return to_string(static_cast<Variant>(variant));
}
const char* pram_edge_tag_string(pram_edge_tag tag) {
  return to_string(static_cast<EdgeTag>(tag));
}

void pram_string_free(char* s) { std::free(s); }
void pram_ops_free(uint32_t* ops) { std::free(ops); }

pram_status pram_trace_parse(const char* text, size_t length,
                             pram_trace** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = nullptr;
    require(text != nullptr || length == 0, "text is NULL");
    auto* t = new pram_trace{parse_trace(std::string_view(text, length))};
    *out = t;
  });
}

pram_status pram_trace_load(const char* path, pram_trace** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = nullptr;
    require(path != nullptr, "path is NULL");
    *out = new pram_trace{load_trace(path)};
  });
}

void pram_trace_free(pram_trace* trace) { delete trace; }

size_t pram_trace_size(const pram_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.size();
}

size_t pram_trace_process_count(const pram_trace* trace) {
  return trace == nullptr ? 0 : trace->trace.process_count();
}

const char* pram_trace_process_name(const pram_trace* trace, size_t process) {
  if (trace == nullptr || process >= trace->trace.process_count()) {
    return nullptr;
  }
  return trace->trace.process_name(static_cast<ProcessId>(process)).c_str();
}

pram_status pram_trace_find_process(const pram_trace* trace, const char* name,
                                    size_t* process) {
  return guarded([&] {
    require(trace != nullptr && name != nullptr && process != nullptr,
            "NULL argument");
    *process = raw(trace->trace.process(name));
  });
}

pram_status pram_trace_describe_op(const pram_trace* trace, uint32_t op,
                                   char** out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    require(op < trace->trace.size(), "operation index out of range");
    *out = copy_string(trace->trace.describe(op));
  });
}

pram_status pram_trace_serialize(const pram_trace* trace, char** out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    *out = copy_string(serialize_trace(trace->trace));
  });
}

pram_variant pram_trace_classify(const pram_trace* trace) {
  if (trace == nullptr) return PRAM_VARIANT_SU;
  return static_cast<pram_variant>(classify(trace->trace));
}

pram_status pram_verify(const pram_trace* trace, size_t focus,
                        pram_algorithm algorithm,
                        const pram_verify_options* options,
                        pram_verdict** out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    require(algorithm >= PRAM_ALGO_RW_CLOSURE && algorithm <= PRAM_ALGO_AUTO,
            "unknown algorithm");
    pram_verify_options defaults;
    pram_verify_options_init(&defaults);
    const pram_verify_options& o = options != nullptr ? *options : defaults;

    VerifyOptions vo;
    vo.algorithm = static_cast<Algorithm>(algorithm);
    if (o.max_states != 0) vo.oracle.max_states = o.max_states;
    if (o.time_limit_ms != 0) {
      vo.oracle.time_limit = std::chrono::milliseconds(o.time_limit_ms);
    }
    vo.debug_structures = o.debug_structures != 0;
    vo.dump_graph = o.dump_graph != 0;

    VerifyResult result =
        verify(trace->trace, checked_process(trace->trace, focus), vo);
    auto v = std::make_unique<pram_verdict>();
    v->verdict = std::move(result.verdict);
    v->graph_dump = std::move(result.graph_dump);
    if (v->verdict.cycle) {
      for (EdgeTag t : v->verdict.cycle->tags) v->cycle_tags.push_back(c_tag(t));
      v->cycle_text = describe(trace->trace, *v->verdict.cycle);
    }
    *out = v.release();
  });
}

void pram_verdict_free(pram_verdict* verdict) { delete verdict; }

pram_outcome pram_verdict_outcome(const pram_verdict* v) {
  return static_cast<pram_outcome>(v->verdict.outcome);
}

pram_algorithm pram_verdict_algorithm(const pram_verdict* v) {
  return static_cast<pram_algorithm>(v->verdict.algorithm);
}

pram_reason pram_verdict_reason(const pram_verdict* v) {
  return static_cast<pram_reason>(v->verdict.reason);
}

size_t pram_verdict_focus(const pram_verdict* v) {
  return raw(v->verdict.focus);
}

size_t pram_verdict_witness(const pram_verdict* v, const uint32_t** ops) {
  if (ops != nullptr) *ops = v->verdict.witness.data();
  return v->verdict.witness.size();
}

size_t pram_verdict_cycle(const pram_verdict* v, const uint32_t** ops,
                          const pram_edge_tag** tags) {
  if (!v->verdict.cycle) {
    if (ops != nullptr) *ops = nullptr;
    if (tags != nullptr) *tags = nullptr;
    return 0;
  }
  if (ops != nullptr) *ops = v->verdict.cycle->ops.data();
  if (tags != nullptr) *tags = v->cycle_tags.data();
  return v->verdict.cycle->ops.size();
}

const char* pram_verdict_cycle_text(const pram_verdict* v) {
  return v->cycle_text.c_str();
}

uint32_t pram_verdict_culprit(const pram_verdict* v) {
  return v->verdict.culprit;
}

const char* pram_verdict_graph_dump(const pram_verdict* v) {
  return v->graph_dump.c_str();
}

pram_status pram_schedule_parse(const char* text, size_t length,
                                uint32_t** ops, size_t* count) {
  return guarded([&] {
    require(ops != nullptr && count != nullptr, "NULL argument");
    *ops = nullptr;
    *count = 0;
    require(text != nullptr || length == 0, "text is NULL");
    const Schedule s = parse_schedule(std::string_view(text, length));
    *ops = copy_ops(s);
    *count = s.size();
  });
}

pram_status pram_check_schedule(const pram_trace* trace, const uint32_t* ops,
                                size_t count, int has_focus, size_t focus,
                                int* legal, char** reason) {
  return guarded([&] {
    require(trace != nullptr && legal != nullptr, "NULL argument");
    require(ops != nullptr || count == 0, "ops is NULL");
    if (reason != nullptr) *reason = nullptr;
    const std::span<const OpIndex> sched(ops, count);
    CheckResult r;
    try {
      r = has_focus ? check_pram_witness(
                          trace->trace,
                          checked_process(trace->trace, focus), sched)
                    : check_legal(trace->trace, sched);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotAPermutation) throw;
      r = CheckResult::failure(e.what());
    }
    *legal = r.ok ? 1 : 0;
    if (reason != nullptr && !r.ok) *reason = copy_string(r.reason);
  });
}

pram_status pram_solve_3partition(uint64_t m, uint64_t bound,
                                  const uint64_t* sizes, size_t count,
                                  int* feasible, size_t* groups) {
  return guarded([&] {
    require(feasible != nullptr, "feasible is NULL");
    const auto solution =
        solve_3partition(make_instance(m, bound, sizes, count));
    *feasible = solution ? 1 : 0;
    if (solution && groups != nullptr) {
      size_t k = 0;
      for (const auto& g : *solution) {
        for (size_t i : g) groups[k++] = i;
      }
    }
  });
}

pram_status pram_reduce_3partition(uint64_t m, uint64_t bound,
                                   const uint64_t* sizes, size_t count,
                                   pram_trace** out, uint32_t** witness,
                                   size_t* witness_count) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    require(witness == nullptr || witness_count != nullptr,
            "witness_count is NULL");
    *out = nullptr;
    if (witness != nullptr) {
      *witness = nullptr;
      *witness_count = 0;
    }
    const ThreePartitionInstance inst = make_instance(m, bound, sizes, count);
    auto t = std::make_unique<pram_trace>();
    t->trace = reduce_3partition(inst);
    if (witness != nullptr) {
      if (const auto partition = solve_3partition(inst)) {
        const Schedule s = forward_witness(t->trace, inst, *partition);
        *witness = copy_ops(s);
        *witness_count = s.size();
      }
    }
    *out = t.release();
  });
}

pram_status pram_gen_trace(uint64_t seed, size_t processes, size_t vars,
                           size_t ops, int duplicate_values,
                           pram_trace** out) {
  return guarded([&] {
    require(out != nullptr, "out is NULL");
    *out = nullptr;
    GenParams params;
    params.processes = processes;
    params.vars = vars;
    params.ops = ops;
    params.policy =
        duplicate_values ? ValuePolicy::kDuplicate : ValuePolicy::kUnique;
    *out = new pram_trace{gen_pram_trace(seed, params)};
  });
}

pram_status pram_mutate_trace(uint64_t seed, const pram_trace* trace,
                              pram_mutation kind, pram_trace** out) {
  return guarded([&] {
    require(trace != nullptr && out != nullptr, "NULL argument");
    *out = nullptr;
    require(kind >= PRAM_MUTATE_SWAP_WRITE_VALUES &&
                kind <= PRAM_MUTATE_RETARGET_READ,
            "unknown mutation");
    *out = new pram_trace{
        mutate_trace(seed, trace->trace, static_cast<MutationKind>(kind))};
  });
}

}  // extern "C"
