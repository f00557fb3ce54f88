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

#include "pramcheck/verify.hpp"

#include "pramcheck/error.hpp"
#include "pramcheck/read_centric.hpp"
#include "pramcheck/rw_closure.hpp"

namespace pramcheck {

Algorithm resolve_algorithm(const Trace& trace, Algorithm requested) {
  const bool duplicates = has_duplicates(classify(trace));
  if (requested == Algorithm::kAuto) {
    return duplicates ? Algorithm::kOracle : Algorithm::kReadCentric;
  }
  if (duplicates && requested != Algorithm::kOracle) {
    throw Error(ErrorCode::kDuplicateValue,
                std::string(to_string(requested)) +
                    " needs unique write values per variable; this trace is " +
                    to_string(classify(trace)));
  }
  return requested;
}

VerifyResult verify(const Trace& trace, ProcessId focus,
                    const VerifyOptions& options) {
  VerifyResult out;
  switch (resolve_algorithm(trace, options.algorithm)) {
    case Algorithm::kRwClosure: {
      RwClosureRun run = run_rw_closure(trace, focus);
      out.verdict = std::move(run.verdict);
      if (options.dump_graph && run.graph) {
        out.graph_dump = dump_graph(*run.graph);
      }
      break;
    }
    case Algorithm::kReadCentric: {
      ReadCentricChecker checker(
          trace, focus, ReadCentricOptions{options.debug_structures});
      out.verdict = checker.run();
      if (options.dump_graph && out.verdict.reason != Reason::kNoDictatingWrite) {
        out.graph_dump = dump_graph(checker.graph());
      }
      break;
    }
    case Algorithm::kOracle:
    case Algorithm::kAuto:
      out.verdict = oracle_verify(trace, focus, options.oracle);
      break;
  }
  return out;
}

std::vector<VerifyResult> verify_all(const Trace& trace,
                                     const VerifyOptions& options) {
  std::vector<VerifyResult> out;
  for (std::size_t p = 0; p < trace.process_count(); ++p) {
    out.push_back(verify(trace, static_cast<ProcessId>(p), options));
  }
  return out;
}

}  // namespace pramcheck
