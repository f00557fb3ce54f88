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

// pramcheck command line: verify, check-schedule, reduce, gen, mutate.
// Talks to the library only through its C interface.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pramcheck/pramcheck.h"

namespace {

constexpr int kExitConsistent = 0;
constexpr int kExitViolation = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitUsage = 64;

// Anything that should end the run with a usage-class exit code.
struct UsageError {
  std::string message;
};

struct TraceDeleter {
  void operator()(pram_trace* t) const { pram_trace_free(t); }
};
struct VerdictDeleter {
  void operator()(pram_verdict* v) const { pram_verdict_free(v); }
};
struct StringDeleter {
  void operator()(char* s) const { pram_string_free(s); }
};
struct OpsDeleter {
  void operator()(uint32_t* p) const { pram_ops_free(p); }
};
using TracePtr = std::unique_ptr<pram_trace, TraceDeleter>;
using VerdictPtr = std::unique_ptr<pram_verdict, VerdictDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;
using OpsPtr = std::unique_ptr<uint32_t, OpsDeleter>;

void check(pram_status s, const std::string& context) {
  if (s == PRAM_OK) return;
  const std::string detail = pram_last_error();
  throw UsageError{context + ": " +
                   (detail.empty() ? pram_status_string(s) : detail)};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw UsageError{"cannot write " + path};
}

// "-" means stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

TracePtr load(const std::string& path) {
  pram_trace* t = nullptr;
  check(pram_trace_load(path.c_str(), &t), path);
  return TracePtr(t);
}

std::string serialize(const pram_trace* trace) {
  char* s = nullptr;
  check(pram_trace_serialize(trace, &s), "serialize");
  return StringPtr(s).get();
}

std::string schedule_text(const uint32_t* ops, size_t n) {
  std::string out;
  for (size_t i = 0; i < n; ++i) out += std::to_string(ops[i]) + "\n";
  return out;
}

std::string describe_op(const pram_trace* trace, uint32_t op) {
  char* s = nullptr;
  check(pram_trace_describe_op(trace, op, &s), "describe");
  return StringPtr(s).get();
}

size_t find_process(const pram_trace* trace, const std::string& name) {
  size_t p = 0;
  check(pram_trace_find_process(trace, name.c_str(), &p), "--focus");
  return p;
}

// ---- verify ----

struct VerifyArgs {
  std::string trace;
  std::string focus;
  bool all = false;
  std::string algorithm = "auto";
  uint64_t budget = 0;
  uint64_t time_limit_ms = 0;
  std::string witness_out;
  std::string dump_graph;
  bool json = false;
  bool debug_structures = false;
};

pram_algorithm parse_algorithm(const std::string& name) {
  if (name == "rw-closure") return PRAM_ALGO_RW_CLOSURE;
  if (name == "read-centric") return PRAM_ALGO_READ_CENTRIC;
  if (name == "oracle") return PRAM_ALGO_ORACLE;
  if (name == "auto") return PRAM_ALGO_AUTO;
  throw UsageError{"unknown algorithm '" + name + "'"};
}

// Under --all every focus gets its own file.
std::string per_focus_path(const std::string& base, const std::string& focus,
                           bool all) {
  return all ? base + "." + focus : base;
}

int cmd_verify(const VerifyArgs& args) {
  const pram_algorithm algorithm = parse_algorithm(args.algorithm);
  TracePtr trace = load(args.trace);
  const pram_trace* t = trace.get();

  std::vector<size_t> foci;
  if (args.all) {
    for (size_t p = 0; p < pram_trace_process_count(t); ++p) foci.push_back(p);
  } else {
    foci.push_back(find_process(t, args.focus));
  }

  pram_verify_options options;
  pram_verify_options_init(&options);
  options.max_states = args.budget;
  options.time_limit_ms = args.time_limit_ms;
  options.debug_structures = args.debug_structures ? 1 : 0;
  options.dump_graph = args.dump_graph.empty() ? 0 : 1;

  // One task per focus over the shared, read-only trace; joined in process
  // order so the report does not depend on scheduling.
  struct Result {
    pram_status status;
    std::string error;
    VerdictPtr verdict;
  };
  std::vector<std::future<Result>> tasks;
  for (size_t focus : foci) {
    tasks.push_back(std::async(std::launch::async, [=, &options] {
      pram_verdict* v = nullptr;
      const pram_status s = pram_verify(t, focus, algorithm, &options, &v);
      return Result{s, s == PRAM_OK ? "" : pram_last_error(), VerdictPtr(v)};
    }));
  }
  std::vector<Result> results;
  for (auto& f : tasks) results.push_back(f.get());

  bool any_violation = false;
  bool any_timeout = false;
  nlohmann::json per_process = nlohmann::json::array();
  std::string text;
  for (size_t i = 0; i < foci.size(); ++i) {
    Result& r = results[i];
    const std::string name = pram_trace_process_name(t, foci[i]);
    if (r.status != PRAM_OK) {
      throw UsageError{name + ": " + (r.error.empty()
                                          ? pram_status_string(r.status)
                                          : r.error)};
    }
    const pram_verdict* v = r.verdict.get();
    const pram_outcome outcome = pram_verdict_outcome(v);
    any_violation |= outcome == PRAM_INCONSISTENT;
    any_timeout |= outcome == PRAM_TIMEOUT;

    nlohmann::json entry;
    entry["focus"] = name;
    entry["algorithm"] = pram_algorithm_string(pram_verdict_algorithm(v));
    entry["verdict"] = pram_outcome_string(outcome);
    entry["reason"] = pram_reason_string(pram_verdict_reason(v));
    text += name + ": " + pram_outcome_string(outcome) + " [" +
            pram_algorithm_string(pram_verdict_algorithm(v)) + "]";

    const uint32_t* cops = nullptr;
    const pram_edge_tag* ctags = nullptr;
    const size_t clen = pram_verdict_cycle(v, &cops, &ctags);
    if (clen > 0) {
      nlohmann::json cycle = nlohmann::json::array();
      for (size_t k = 0; k < clen; ++k) {
        nlohmann::json step{{"op", cops[k]}, {"desc", describe_op(t, cops[k])}};
        if (k + 1 < clen) step["edge"] = pram_edge_tag_string(ctags[k]);
        cycle.push_back(std::move(step));
      }
      entry["cycle"] = std::move(cycle);
      text += std::string(" cycle: ") + pram_verdict_cycle_text(v);
    }
    const uint32_t culprit = pram_verdict_culprit(v);
    if (culprit != PRAM_NO_OP) {
      entry["culprit"] = {{"op", culprit}, {"desc", describe_op(t, culprit)}};
      text += " no write produces: " + describe_op(t, culprit);
    }
    if (outcome == PRAM_TIMEOUT) text += " (search budget exhausted)";

    const uint32_t* wops = nullptr;
    const size_t wlen = pram_verdict_witness(v, &wops);
    if (!args.witness_out.empty() && outcome == PRAM_CONSISTENT) {
      const std::string path = per_focus_path(args.witness_out, name, args.all);
      write_file(path, schedule_text(wops, wlen));
      entry["witness_file"] = path;
      text += " witness: " + path;
    }
    if (!args.dump_graph.empty() && *pram_verdict_graph_dump(v) != '\0') {
      const std::string path = per_focus_path(args.dump_graph, name, args.all);
      write_file(path, pram_verdict_graph_dump(v));
      entry["graph_file"] = path;
    }
    per_process.push_back(std::move(entry));
    text += "\n";
  }

  // A proven violation outranks an inconclusive focus.
  const int code = any_violation  ? kExitViolation
                   : any_timeout ? kExitTimeout
                                 : kExitConsistent;
  if (args.json) {
    nlohmann::json report;
    report["consistent"] = code == kExitTimeout
                               ? nlohmann::json(nullptr)
                               : nlohmann::json(code == kExitConsistent);
    report["per_process"] = std::move(per_process);
    report["variant"] = pram_variant_string(pram_trace_classify(t));
    report["n"] = pram_trace_size(t);
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text
              << (code == kExitConsistent  ? "CONSISTENT"
                  : code == kExitViolation ? "INCONSISTENT"
                                           : "TIMEOUT")
              << "\n";
  }
  return code;
}

// ---- check-schedule ----

int cmd_check_schedule(const std::string& trace_path,
                       const std::string& schedule_path,
                       const std::string& focus) {
  TracePtr trace = load(trace_path);
  const std::string text = read_file(schedule_path);
  uint32_t* raw_ops = nullptr;
  size_t count = 0;
  check(pram_schedule_parse(text.data(), text.size(), &raw_ops, &count),
        schedule_path);
  OpsPtr ops(raw_ops);
  const bool has_focus = !focus.empty();
  const size_t p = has_focus ? find_process(trace.get(), focus) : 0;
  int legal = 0;
  char* reason = nullptr;
  check(pram_check_schedule(trace.get(), ops.get(), count, has_focus, p, &legal,
                            &reason),
        "check-schedule");
  StringPtr why(reason);
  if (legal) {
    std::cout << "LEGAL\n";
    return 0;
  }
  std::cout << "ILLEGAL: " << why.get() << "\n";
  return 1;
}

// ---- reduce ----

int cmd_reduce(uint64_t m, uint64_t bound, const std::vector<uint64_t>& sizes,
               const std::string& out, const std::string& witness_path) {
  pram_trace* raw_trace = nullptr;
  uint32_t* raw_witness = nullptr;
  size_t witness_len = 0;
  const bool want_witness = !witness_path.empty();
  check(pram_reduce_3partition(m, bound, sizes.data(), sizes.size(),
                               &raw_trace, want_witness ? &raw_witness : nullptr,
                               want_witness ? &witness_len : nullptr),
        "reduce");
  TracePtr trace(raw_trace);
  OpsPtr witness(raw_witness);
  emit(out, serialize(trace.get()));
  if (want_witness) {
    if (witness) {
      write_file(witness_path, schedule_text(witness.get(), witness_len));
    } else {
      std::cerr << "instance has no 3-partition; no witness written\n";
    }
  }
  return 0;
}

// ---- gen / mutate ----

int cmd_gen(uint64_t seed, size_t processes, size_t vars, size_t ops,
            const std::string& policy, const std::string& out) {
  if (policy != "unique" && policy != "duplicate") {
    throw UsageError{"unknown policy '" + policy + "'"};
  }
  pram_trace* t = nullptr;
  check(pram_gen_trace(seed, processes, vars, ops, policy == "duplicate", &t),
        "gen");
  emit(out, serialize(TracePtr(t).get()));
  return 0;
}

int cmd_mutate(uint64_t seed, const std::string& kind, const std::string& in,
               const std::string& out) {
  pram_mutation k;
  if (kind == "swap-write-values") {
    k = PRAM_MUTATE_SWAP_WRITE_VALUES;
  } else if (kind == "reorder-reads") {
    k = PRAM_MUTATE_REORDER_READS;
  } else if (kind == "retarget-read") {
    k = PRAM_MUTATE_RETARGET_READ;
  } else {
    throw UsageError{"unknown mutation '" + kind + "'"};
  }
  TracePtr trace = load(in);
  pram_trace* t = nullptr;
  check(pram_mutate_trace(seed, trace.get(), k, &t), "mutate");
  emit(out, serialize(TracePtr(t).get()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PRAM consistency checker for per-process operation logs"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a trace");
  verify->add_option("trace", va.trace, "trace file")->required();
  auto* focus_opt =
      verify->add_option("--focus", va.focus, "process to check");
  auto* all_opt =
      verify->add_flag("--all", va.all, "check every process as focus");
  focus_opt->excludes(all_opt);
  verify->add_option("--algorithm", va.algorithm,
                     "rw-closure, read-centric, oracle or auto")
      ->capture_default_str();
  verify->add_option("--budget", va.budget,
                     "oracle search-state budget (default 10^7)");
  verify->add_option("--time-limit-ms", va.time_limit_ms,
                     "oracle wall-clock limit");
  verify->add_option("--witness-out", va.witness_out,
                     "write the witness schedule here (PATH.<focus> with --all)");
  verify->add_option("--dump-graph", va.dump_graph,
                     "write the final operation graph here");
  verify->add_flag("--json", va.json, "JSON report on stdout");
  verify->add_flag("--debug-oracle-structures", va.debug_structures,
                   "recompute read-centric tables from scratch and compare");

  std::string cs_trace, cs_sched, cs_focus;
  auto* cs = app.add_subcommand("check-schedule", "check a schedule");
  cs->add_option("trace", cs_trace, "trace file")->required();
  cs->add_option("schedule", cs_sched, "one operation index per line")
      ->required();
  cs->add_option("--focus", cs_focus,
                 "check as a full witness for this process");

  uint64_t rm = 0, rb = 0;
  std::vector<uint64_t> rsizes;
  std::string rout, rwitness;
  auto* reduce = app.add_subcommand("reduce", "3-Partition instance to trace");
  reduce->add_option("--m", rm, "number of groups")->required();
  reduce->add_option("--B", rb, "target group sum")->required();
  reduce->add_option("--sizes", rsizes, "3m item sizes")
      ->required()
      ->delimiter(',');
  reduce->add_option("-o,--out", rout, "output trace (default stdout)");
  reduce->add_option("--with-witness", rwitness,
                     "write the schedule induced by a solution here");

  uint64_t gseed = 0;
  size_t gprocs = 3, gvars = 2, gops = 20;
  std::string gpolicy = "unique", gout;
  auto* gen = app.add_subcommand("gen", "generate a PRAM-consistent trace");
  gen->add_option("--seed", gseed)->required();
  gen->add_option("--processes", gprocs)->capture_default_str();
  gen->add_option("--vars", gvars)->capture_default_str();
  gen->add_option("--ops", gops)->capture_default_str();
  gen->add_option("--policy", gpolicy, "unique or duplicate")
      ->capture_default_str();
  gen->add_option("-o,--out", gout, "output trace (default stdout)");

  uint64_t mseed = 0;
  std::string mkind, min, mout;
  auto* mutate = app.add_subcommand("mutate", "apply one structural change");
  mutate->add_option("trace", min, "input trace")->required();
  mutate->add_option("--seed", mseed)->required();
  mutate->add_option("--kind", mkind,
                     "swap-write-values, reorder-reads or retarget-read")
      ->required();
  mutate->add_option("-o,--out", mout, "output trace (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*verify) {
      if (!va.all && va.focus.empty()) {
        throw UsageError{"verify needs --focus or --all"};
      }
      return cmd_verify(va);
    }
    if (*cs) return cmd_check_schedule(cs_trace, cs_sched, cs_focus);
    if (*reduce) return cmd_reduce(rm, rb, rsizes, rout, rwitness);
    if (*gen) return cmd_gen(gseed, gprocs, gvars, gops, gpolicy, gout);
    if (*mutate) return cmd_mutate(mseed, mkind, min, mout);
  } catch (const UsageError& e) {
    std::cerr << "pramcheck: " << e.message << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
