/*
 * Copyright 2026 The SIAN Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SIAN_ERRORS_H_
#define SIAN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sian {

// Base class of every error thrown by the library. The subclasses mirror the
// failure categories the command line tool maps to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A serialized artifact or sparse pattern is malformed.
class FormatError : public Error {
 public:
  using Error::Error;
};

// An object was used in the wrong lifecycle state (e.g. stale forward cache).
class StateError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A structural invariant of a user-provided object is violated.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class LookupError : public Error {
 public:
  using Error::Error;
};

// NaN or infinity appeared where finite values are required.
class NumericError : public Error {
 public:
  using Error::Error;
};

// The request exceeds what an exhaustive routine can enumerate.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Interaction strength cannot be estimated (every sample degenerate).
class DetectionError : public Error {
 public:
  using Error::Error;
};

// Bad user configuration, missing files or unreadable input data.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  DataError(const std::string& message, long line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace sian

#endif  // SIAN_ERRORS_H_
