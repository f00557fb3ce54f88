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

#include "pramcheck/trace.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "pramcheck/error.hpp"

namespace pramcheck {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kUnknownProcess: return "unknown process";
    case ErrorCode::kDuplicateValue: return "duplicate value";
    case ErrorCode::kUnmatchedRead: return "unmatched read";
    case ErrorCode::kNotAPermutation: return "not a permutation";
    case ErrorCode::kInvalidInstance: return "invalid instance";
    case ErrorCode::kInapplicable: return "inapplicable";
    case ErrorCode::kCycleFound: return "cycle found";
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kInternal: return "internal error";
  }
  return "unknown error";
}

ProcessId Trace::add_process(std::string_view name) {
  auto it = process_ids_.find(std::string(name));
  if (it != process_ids_.end()) return it->second;
  const auto id = static_cast<ProcessId>(process_names_.size());
  process_names_.emplace_back(name);
  histories_.emplace_back();
  process_ids_.emplace(std::string(name), id);
  return id;
}

VariableId Trace::add_variable(std::string_view name) {
  auto it = variable_ids_.find(std::string(name));
  if (it != variable_ids_.end()) return it->second;
  const auto id = static_cast<VariableId>(variable_names_.size());
  variable_names_.emplace_back(name);
  variable_ids_.emplace(std::string(name), id);
  return id;
}

OpIndex Trace::append(ProcessId process, OpKind kind, VariableId variable,
                      Value value) {
  if (raw(process) >= process_names_.size() ||
      raw(variable) >= variable_names_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "append: process or variable not registered");
  }
  const auto index = static_cast<OpIndex>(ops_.size());
  ops_.push_back(Operation{index, kind, process, variable, value});
  auto& history = histories_[raw(process)];
  positions_.push_back(history.size());
  history.push_back(index);
  return index;
}

OpIndex Trace::append(std::string_view process, OpKind kind,
                      std::string_view variable, Value value) {
  return append(add_process(process), kind, add_variable(variable), value);
}

std::optional<ProcessId> Trace::find_process(std::string_view name) const {
  auto it = process_ids_.find(std::string(name));
  if (it == process_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<VariableId> Trace::find_variable(std::string_view name) const {
  auto it = variable_ids_.find(std::string(name));
  if (it == variable_ids_.end()) return std::nullopt;
  return it->second;
}

ProcessId Trace::process(std::string_view name) const {
  if (auto p = find_process(name)) return *p;
  throw Error(ErrorCode::kUnknownProcess,
              "unknown process '" + std::string(name) + "'");
}

std::string Trace::describe(OpIndex index) const {
  const Operation& o = op(index);
  std::string out = process_name(o.process);
  out += o.is_write() ? " W " : " R ";
  out += variable_name(o.variable);
  out += ' ';
  out += std::to_string(o.value);
  return out;
}

namespace {

bool is_identifier(std::string_view token) {
  if (token.empty()) return false;
  auto head = static_cast<unsigned char>(token.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  for (char c : token) {
    auto u = static_cast<unsigned char>(c);
    if (!(std::isalnum(u) || u == '_')) return false;
  }
  return true;
}

bool is_blank(std::string_view line) {
  for (char c : line) {
    if (c != ' ' && c != '\t') return false;
  }
  return true;
}

}  // namespace

Trace parse_trace(std::string_view text) {
  Trace trace;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (is_blank(line)) continue;
    const std::size_t first = line.find_first_not_of(" \t");
    if (line[first] == '#') continue;

    std::string_view fields[4];
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t sp = line.find(' ', start);
      std::string_view token = line.substr(
          start, sp == std::string_view::npos ? std::string_view::npos
                                              : sp - start);
      if (count == 4) {
        throw ParseError(line_no, "too many fields");
      }
      fields[count++] = token;
      if (sp == std::string_view::npos) break;
      start = sp + 1;
    }
    if (count != 4) {
      throw ParseError(line_no,
                       "expected '<process> <W|R> <variable> <value>'");
    }
    if (!is_identifier(fields[0])) {
      throw ParseError(line_no, "malformed process id '" +
                                    std::string(fields[0]) + "'");
    }
    OpKind kind;
    if (fields[1] == "W") {
      kind = OpKind::kWrite;
    } else if (fields[1] == "R") {
      kind = OpKind::kRead;
    } else {
      throw ParseError(line_no, "operation kind must be 'W' or 'R', got '" +
                                    std::string(fields[1]) + "'");
    }
    if (!is_identifier(fields[2])) {
      throw ParseError(line_no, "malformed variable id '" +
                                    std::string(fields[2]) + "'");
    }
    Value value = 0;
    const char* vb = fields[3].data();
    const char* ve = vb + fields[3].size();
    auto [ptr, ec] = std::from_chars(vb, ve, value);
    if (fields[3].empty() || ec != std::errc() || ptr != ve) {
      throw ParseError(line_no, "value '" + std::string(fields[3]) +
                                    "' is not a 64-bit integer");
    }
    trace.append(fields[0], kind, fields[2], value);
  }
  return trace;
}

Trace load_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_trace(buffer.str());
}

std::string serialize_trace(const Trace& trace) {
  std::string out;
  out.reserve(trace.size() * 12);
  for (const Operation& o : trace.operations()) {
    out += trace.describe(o.index);
    out += '\n';
  }
  return out;
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::kSU: return "SU";
    case Variant::kMU: return "MU";
    case Variant::kSD: return "SD";
    case Variant::kMD: return "MD";
  }
  return "?";
}

Variant classify(const Trace& trace) {
  std::set<VariableId> used;
  std::set<std::pair<VariableId, Value>> written;
  bool duplicate = false;
  for (const Operation& o : trace.operations()) {
    used.insert(o.variable);
    if (o.is_write() && !written.emplace(o.variable, o.value).second) {
      duplicate = true;
    }
  }
  const bool multiple = used.size() >= 2;
  if (duplicate) return multiple ? Variant::kMD : Variant::kSD;
  return multiple ? Variant::kMU : Variant::kSU;
}

VisibleProjection visible(const Trace& trace, ProcessId focus) {
  if (raw(focus) >= trace.process_count()) {
    throw Error(ErrorCode::kUnknownProcess,
                "unknown process #" + std::to_string(raw(focus)));
  }
  VisibleProjection projection{focus, {}};
  for (const Operation& o : trace.operations()) {
    if (o.is_write() || o.process == focus) projection.ops.push_back(o.index);
  }
  return projection;
}

ReadMapping build_read_mapping(const Trace& trace,
                               const VisibleProjection& projection) {
  std::map<std::pair<VariableId, Value>, std::vector<OpIndex>> writers;
  for (const Operation& o : trace.operations()) {
    if (o.is_write()) writers[{o.variable, o.value}].push_back(o.index);
  }
  ReadMapping mapping(trace.size());
  OpIndex unmatched = kNoOp;
  for (OpIndex index : projection.ops) {
    const Operation& o = trace.op(index);
    if (!o.is_read()) continue;
    auto it = writers.find({o.variable, o.value});
    if (it == writers.end()) {
      if (unmatched == kNoOp) unmatched = index;
      continue;
    }
    if (it->second.size() > 1) {
      throw Error(ErrorCode::kDuplicateValue,
                  "read #" + std::to_string(index) + " (" +
                      trace.describe(index) + ") has " +
                      std::to_string(it->second.size()) +
                      " candidate dictating writes");
    }
    mapping.set(index, it->second.front());
  }
  if (unmatched != kNoOp) throw UnmatchedRead(unmatched);
  return mapping;
}

}  // namespace pramcheck
