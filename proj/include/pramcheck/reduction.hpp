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

#ifndef PRAMCHECK_REDUCTION_HPP_
#define PRAMCHECK_REDUCTION_HPP_

#include <optional>

#include "pramcheck/legality.hpp"
#include "pramcheck/oracle.hpp"
#include "pramcheck/three_partition.hpp"
#include "pramcheck/trace.hpp"

namespace pramcheck {

// Values on the single variable x.
inline constexpr Value kValA = 1, kValA2 = 2, kValB = 3, kValB2 = 4,
                       kValC = 5, kValC2 = 6;

// Processes P0 (focus), Pa1..Pa<3m>, Pc1, Pc2, Pc3. Pa<i> writes a', then
// s_i times b', then c'. Pc1/Pc2/Pc3 write a (3m times), b (mB times) and
// c (3m times). P0 has m slots of (R a, R a') x3, (R b, R b') xB,
// (R c, R c') x3. Throws Error(kInvalidInstance).
Trace reduce_3partition(const ThreePartitionInstance& inst);

// The schedule a solution induces on the reduced trace: each slot opens its
// three item processes, pairs every b read with the next b' of an open
// process, then closes them.
Schedule forward_witness(const Trace& reduced,
                         const ThreePartitionInstance& inst,
                         const Partition& partition);

struct RoundtripReport {
  bool feasible = false;
  std::optional<Partition> partition;
  Outcome oracle = Outcome::kTimeout;
  OracleStats oracle_stats;
  // Set for feasible instances.
  std::optional<bool> witness_ok;
  std::size_t trace_size = 0;
};

RoundtripReport reduction_roundtrip(const ThreePartitionInstance& inst,
                                    const OracleOptions& options = {});

}  // namespace pramcheck

#endif  // PRAMCHECK_REDUCTION_HPP_
