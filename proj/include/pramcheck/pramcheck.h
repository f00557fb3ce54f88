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

/* C interface to the PRAM consistency checkers. Every handle is opaque and
 * owned by the caller once returned; free it with the matching _free call.
 * Functions that can fail return a pram_status and leave a message for
 * pram_last_error() on the calling thread. */

#ifndef PRAMCHECK_PRAMCHECK_H_
#define PRAMCHECK_PRAMCHECK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PRAM_API __declspec(dllexport)
#else
#define PRAM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct pram_trace pram_trace;
typedef struct pram_verdict pram_verdict;

typedef enum pram_status {
  PRAM_OK = 0,
  PRAM_E_PARSE = 1,
  PRAM_E_IO = 2,
  PRAM_E_UNKNOWN_PROCESS = 3,
  PRAM_E_DUPLICATE_VALUE = 4,
  PRAM_E_UNMATCHED_READ = 5,
  PRAM_E_NOT_A_PERMUTATION = 6,
  PRAM_E_INVALID_INSTANCE = 7,
  PRAM_E_INAPPLICABLE = 8,
  PRAM_E_CYCLE = 9,
  PRAM_E_INVALID_ARGUMENT = 10,
  PRAM_E_INTERNAL = 11,
  PRAM_E_NO_MEMORY = 12
} pram_status;

typedef enum pram_algorithm {
  PRAM_ALGO_RW_CLOSURE = 0,
  PRAM_ALGO_READ_CENTRIC = 1,
  PRAM_ALGO_ORACLE = 2,
  PRAM_ALGO_AUTO = 3
} pram_algorithm;

typedef enum pram_outcome {
  PRAM_CONSISTENT = 0,
  PRAM_INCONSISTENT = 1,
  PRAM_TIMEOUT = 2
} pram_outcome;

typedef enum pram_reason {
  PRAM_REASON_NONE = 0,
  PRAM_REASON_CYCLE = 1,
  PRAM_REASON_NO_DICTATING_WRITE = 2,
  PRAM_REASON_EXHAUSTED = 3,
  PRAM_REASON_BUDGET_EXCEEDED = 4
} pram_reason;

typedef enum pram_variant {
  PRAM_VARIANT_SU = 0,
  PRAM_VARIANT_MU = 1,
  PRAM_VARIANT_SD = 2,
  PRAM_VARIANT_MD = 3
} pram_variant;

typedef enum pram_edge_tag {
  PRAM_EDGE_PROGRAM_ORDER = 0,
  PRAM_EDGE_WRITE_TO = 1,
  PRAM_EDGE_RULE_C = 2
} pram_edge_tag;

typedef enum pram_mutation {
  PRAM_MUTATE_SWAP_WRITE_VALUES = 0,
  PRAM_MUTATE_REORDER_READS = 1,
  PRAM_MUTATE_RETARGET_READ = 2
} pram_mutation;

#define PRAM_NO_OP UINT32_MAX

typedef struct pram_verify_options {
  /* Oracle search nodes; 0 means the default of 10^7. */
  uint64_t max_states;
  /* Oracle wall-clock ceiling in milliseconds; 0 means none. */
  uint64_t time_limit_ms;
  /* Read-centric: recompute its tables from scratch at every use. */
  int debug_structures;
  /* Keep a text dump of the final operation graph in the verdict. */
  int dump_graph;
} pram_verify_options;

PRAM_API void pram_verify_options_init(pram_verify_options* options);

/* Message of the last failure on this thread; "" if none. */
PRAM_API const char* pram_last_error(void);
PRAM_API const char* pram_status_string(pram_status status);
PRAM_API const char* pram_algorithm_string(pram_algorithm algorithm);
PRAM_API const char* pram_outcome_string(pram_outcome outcome);
PRAM_API const char* pram_reason_string(pram_reason reason);
PRAM_API const char* pram_variant_string(pram_variant variant);
PRAM_API const char* pram_edge_tag_string(pram_edge_tag tag);

/* Strings and arrays handed out by the library. */
PRAM_API void pram_string_free(char* s);
PRAM_API void pram_ops_free(uint32_t* ops);

/* Traces */
PRAM_API pram_status pram_trace_parse(const char* text, size_t length,
                                      pram_trace** out);
PRAM_API pram_status pram_trace_load(const char* path, pram_trace** out);
PRAM_API void pram_trace_free(pram_trace* trace);
PRAM_API size_t pram_trace_size(const pram_trace* trace);
PRAM_API size_t pram_trace_process_count(const pram_trace* trace);
/* NULL when out of range. Valid while the trace lives. */
PRAM_API const char* pram_trace_process_name(const pram_trace* trace,
                                             size_t process);
PRAM_API pram_status pram_trace_find_process(const pram_trace* trace,
                                             const char* name,
                                             size_t* process);
/* "p1 W x 1"; free with pram_string_free. */
PRAM_API pram_status pram_trace_describe_op(const pram_trace* trace,
                                            uint32_t op, char** out);
PRAM_API pram_status pram_trace_serialize(const pram_trace* trace,
                                          char** out);
PRAM_API pram_variant pram_trace_classify(const pram_trace* trace);

/* Verification of one focus process. options may be NULL. */
PRAM_API pram_status pram_verify(const pram_trace* trace, size_t focus,
                                 pram_algorithm algorithm,
                                 const pram_verify_options* options,
                                 pram_verdict** out);
PRAM_API void pram_verdict_free(pram_verdict* verdict);
PRAM_API pram_outcome pram_verdict_outcome(const pram_verdict* verdict);
/* The algorithm that ran (never PRAM_ALGO_AUTO). */
PRAM_API pram_algorithm pram_verdict_algorithm(const pram_verdict* verdict);
PRAM_API pram_reason pram_verdict_reason(const pram_verdict* verdict);
PRAM_API size_t pram_verdict_focus(const pram_verdict* verdict);
/* Witness schedule; length 0 unless consistent. */
PRAM_API size_t pram_verdict_witness(const pram_verdict* verdict,
                                     const uint32_t** ops);
/* Cycle as ops[0] -> ... -> ops[n-1] == ops[0]; tags[i] labels the edge
 * leaving ops[i]. Returns 0 when there is no cycle. */
PRAM_API size_t pram_verdict_cycle(const pram_verdict* verdict,
                                   const uint32_t** ops,
                                   const pram_edge_tag** tags);
/* Human-readable cycle; "" when there is none. */
PRAM_API const char* pram_verdict_cycle_text(const pram_verdict* verdict);
/* Read without a dictating write, or PRAM_NO_OP. */
PRAM_API uint32_t pram_verdict_culprit(const pram_verdict* verdict);
/* `from to tag` lines; "" unless dump_graph was requested. */
PRAM_API const char* pram_verdict_graph_dump(const pram_verdict* verdict);

/* Schedules: one operation index per line. */
PRAM_API pram_status pram_schedule_parse(const char* text, size_t length,
                                         uint32_t** ops, size_t* count);
/* With has_focus, checks a full witness for that focus; otherwise checks
 * legality of a permutation of all operations. *legal receives 0/1 and
 * *reason (may be NULL) the first violated condition. */
PRAM_API pram_status pram_check_schedule(const pram_trace* trace,
                                         const uint32_t* ops, size_t count,
                                         int has_focus, size_t focus,
                                         int* legal, char** reason);

/* 3-Partition */
/* On success *feasible is 0/1; groups (may be NULL) receives 3m item
 * indices, three per group. */
PRAM_API pram_status pram_solve_3partition(uint64_t m, uint64_t bound,
                                           const uint64_t* sizes,
                                           size_t count, int* feasible,
                                           size_t* groups);
/* Reduced trace; if witness is non-NULL it receives the schedule a
 * solution induces (NULL and 0 for infeasible instances). */
PRAM_API pram_status pram_reduce_3partition(uint64_t m, uint64_t bound,
                                            const uint64_t* sizes,
                                            size_t count, pram_trace** out,
                                            uint32_t** witness,
                                            size_t* witness_count);

/* Generators */
PRAM_API pram_status pram_gen_trace(uint64_t seed, size_t processes,
                                    size_t vars, size_t ops,
                                    int duplicate_values, pram_trace** out);
PRAM_API pram_status pram_mutate_trace(uint64_t seed, const pram_trace* trace,
                                       pram_mutation kind, pram_trace** out);

#ifdef __cplusplus
}
#endif

#endif  /* PRAMCHECK_PRAMCHECK_H_ */
