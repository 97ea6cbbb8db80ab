// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBSEL_ERROR_HPP_
#define SUBSEL_ERROR_HPP_

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace subsel {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or invariant violated by caller-supplied data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// File does not follow the declared layout (magic, version, checksum).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Payload shorter or longer than the header declares.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Text input that cannot be parsed; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search asked to enumerate more subsets than allowed.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Algorithm applied to an objective it does not support.
class UnsupportedObjectiveError : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <typename... Args>
std::string concat(Args&&... args) {
  std::ostringstream oss;
  (oss << ... << std::forward<Args>(args));
  return oss.str();
}

template <typename E = ValidationError, typename... Args>
void require(bool cond, Args&&... args) {
  if (!cond) throw E(concat(std::forward<Args>(args)...));
}

}  // namespace detail
}  // namespace subsel

#endif  // SUBSEL_ERROR_HPP_
