/* Copyright 2026 The deprecparse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef DEPRECPARSE_ERRORS_H_
#define DEPRECPARSE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deprecparse {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed bracketed notation. `position` is a byte offset into the input.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string &message, size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}
  size_t position() const { return position_; }

 private:
  size_t position_;
};

class LabelError : public Error {
 public:
  using Error::Error;
};

// A code expression that cannot be decomposed into namespace/callable/args.
class ConversionError : public Error {
 public:
  ConversionError(const std::string &raw, const std::string &reason)
      : Error("cannot convert code expression '" + raw + "': " + reason),
        raw_(raw) {}
  const std::string &raw() const { return raw_; }

 private:
  std::string raw_;
};

// A transition applied in a state where its predicate does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Empty inputs to search or decoding.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Dataset record that violates the schema; `line` is 1-based.
class SchemaError : public Error {
 public:
  SchemaError(const std::string &message, size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  size_t line() const { return line_; }

 private:
  size_t line_;
};

}  // namespace deprecparse

#endif  // DEPRECPARSE_ERRORS_H_
