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

#ifndef PRAMCHECK_ERROR_HPP_
#define PRAMCHECK_ERROR_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pramcheck {

enum class ErrorCode {
  kParse,
  kIo,
  kUnknownProcess,
  kDuplicateValue,
  kUnmatchedRead,
  kNotAPermutation,
  kInvalidInstance,
  kInapplicable,
  kCycleFound,
  kInvalidArgument,
  kInternal,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above; the C
// API maps them one-to-one onto status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorCode::kParse,
              "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A visible read whose value no write on its variable ever produced.
class UnmatchedRead : public Error {
 public:
  explicit UnmatchedRead(std::uint32_t read)
      : Error(ErrorCode::kUnmatchedRead,
              "read #" + std::to_string(read) + " has no dictating write"),
        read_(read) {}

  std::uint32_t read() const noexcept { return read_; }

 private:
  std::uint32_t read_;
};

}  // namespace pramcheck

#endif  // PRAMCHECK_ERROR_HPP_
