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

#ifndef PRAMCHECK_TESTS_SUPPORT_FIXTURES_HPP_
#define PRAMCHECK_TESTS_SUPPORT_FIXTURES_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pramcheck/legality.hpp"
#include "pramcheck/trace.hpp"

namespace fixtures {

using pramcheck::OpIndex;
using pramcheck::Trace;

inline std::string testdata(const std::string& name) {
  return std::string(PRAMCHECK_TESTDATA_DIR) + "/" + name;
}

// Index of the operation "proc K var value"; throws if absent.
inline OpIndex op(const Trace& t, std::string_view proc, char kind,
                  std::string_view var, pramcheck::Value value) {
  for (const auto& o : t.operations()) {
    if (t.process_name(o.process) == proc &&
        (o.is_write() ? 'W' : 'R') == kind && t.variable_name(o.variable) == var &&
        o.value == value) {
      return o.index;
    }
  }
  throw std::logic_error("no such operation");
}

// The 19 operations of the closure example's witness, in witness order:
// each write alone on its own process, every read on p0.
struct ClosureExample {
  Trace trace;
  pramcheck::Schedule schedule;
};

inline ClosureExample closure_example() {
  const char* tokens[] = {"Wf2", "Wf1", "Wz2", "Wz1", "Wy2", "Wy1", "Rf1",
                          "Wx5", "Wx3", "Wx2", "Wc1", "Rc1", "Rz1", "Ry1",
                          "Wa1", "Ra1", "Wb1", "Rb1", "Rx2"};
  ClosureExample out;
  int writer = 0;
  for (const char* tok : tokens) {
    const std::string var(1, tok[1]);
    const pramcheck::Value value = tok[2] - '0';
    if (tok[0] == 'W') {
      out.schedule.push_back(out.trace.append("w" + std::to_string(writer++),
                                              pramcheck::OpKind::kWrite, var,
                                              value));
    } else {
      out.schedule.push_back(
          out.trace.append("p0", pramcheck::OpKind::kRead, var, value));
    }
  }
  return out;
}

}  // namespace fixtures

#endif  // PRAMCHECK_TESTS_SUPPORT_FIXTURES_HPP_
