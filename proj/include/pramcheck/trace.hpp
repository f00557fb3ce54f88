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

#ifndef PRAMCHECK_TRACE_HPP_
#define PRAMCHECK_TRACE_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pramcheck {

// Position of an operation in load order. Dense from 0 within a trace.
using OpIndex = std::uint32_t;
inline constexpr OpIndex kNoOp = std::numeric_limits<OpIndex>::max();

using Value = std::int64_t;

enum class ProcessId : std::uint32_t {};
enum class VariableId : std::uint32_t {};

constexpr std::uint32_t raw(ProcessId p) { return static_cast<std::uint32_t>(p); }
constexpr std::uint32_t raw(VariableId v) { return static_cast<std::uint32_t>(v); }

enum class OpKind : std::uint8_t { kRead, kWrite };

struct Operation {
  OpIndex index = 0;
  OpKind kind = OpKind::kWrite;
  ProcessId process{};
  VariableId variable{};
  Value value = 0;

  bool is_read() const { return kind == OpKind::kRead; }
  bool is_write() const { return kind == OpKind::kWrite; }
};

// Per-process operation histories. Program order is the order in which a
// process's operations were appended; the trace is immutable once handed to
// any checker.
class Trace {
 public:
  Trace() = default;

  // Registers a process (possibly with no operations). Returns the existing
  // id when the name is already known.
  ProcessId add_process(std::string_view name);
  VariableId add_variable(std::string_view name);
  OpIndex append(ProcessId process, OpKind kind, VariableId variable,
                 Value value);
  // Convenience for tests and generators.
  OpIndex append(std::string_view process, OpKind kind,
                 std::string_view variable, Value value);

  std::size_t size() const { return ops_.size(); }
  bool empty() const { return ops_.empty(); }
  std::span<const Operation> operations() const { return ops_; }
  const Operation& op(OpIndex index) const { return ops_.at(index); }

  std::size_t process_count() const { return process_names_.size(); }
  std::size_t variable_count() const { return variable_names_.size(); }
  const std::string& process_name(ProcessId p) const {
    return process_names_.at(raw(p));
  }
  const std::string& variable_name(VariableId v) const {
    return variable_names_.at(raw(v));
  }
  std::optional<ProcessId> find_process(std::string_view name) const;
  std::optional<VariableId> find_variable(std::string_view name) const;
  // Throws Error(kUnknownProcess).
  ProcessId process(std::string_view name) const;

  // Operations of one process in program order.
  std::span<const OpIndex> history(ProcessId p) const {
    return histories_.at(raw(p));
  }
  // Position of an operation within its process history.
  std::size_t program_position(OpIndex index) const {
    return positions_.at(index);
  }

  // "p1 W x 1"
  std::string describe(OpIndex index) const;

 private:
  std::vector<Operation> ops_;
  std::vector<std::size_t> positions_;
  std::vector<std::string> process_names_;
  std::vector<std::string> variable_names_;
  std::vector<std::vector<OpIndex>> histories_;
  std::unordered_map<std::string, ProcessId> process_ids_;
  std::unordered_map<std::string, VariableId> variable_ids_;
};

// Line format: `<process> <W|R> <variable> <int64>`; '#' starts a comment
// line; blank lines are ignored. Operations are indexed in file order.
Trace parse_trace(std::string_view text);
Trace load_trace(const std::string& path);
std::string serialize_trace(const Trace& trace);

// Single/Multiple variables x Unique/Duplicate write values per variable.
enum class Variant { kSU, kMU, kSD, kMD };

const char* to_string(Variant v);
Variant classify(const Trace& trace);
inline bool has_duplicates(Variant v) {
  return v == Variant::kSD || v == Variant::kMD;
}

// All writes plus the reads of the focus process, in index order.
struct VisibleProjection {
  ProcessId focus{};
  std::vector<OpIndex> ops;
};

VisibleProjection visible(const Trace& trace, ProcessId focus);

// Dictating write of each visible read (unique-value traces only).
class ReadMapping {
 public:
  ReadMapping() = default;
  explicit ReadMapping(std::size_t trace_size)
      : dictate_(trace_size, kNoOp) {}

  void set(OpIndex read, OpIndex write) { dictate_.at(read) = write; }
  // kNoOp for non-reads and invisible reads.
  OpIndex dictating(OpIndex read) const { return dictate_.at(read); }
  std::size_t trace_size() const { return dictate_.size(); }

 private:
  std::vector<OpIndex> dictate_;
};

// Throws Error(kDuplicateValue) when some visible read could be dictated by
// more than one write, and UnmatchedRead when a visible read has none. The
// duplicate check covers every read before the first unmatched one is
// reported.
ReadMapping build_read_mapping(const Trace& trace,
                               const VisibleProjection& projection);

}  // namespace pramcheck

#endif  // PRAMCHECK_TRACE_HPP_
