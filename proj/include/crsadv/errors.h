//
// Copyright 2026 The crsadv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef CRSADV_ERRORS_H_
#define CRSADV_ERRORS_H_

#include <optional>
#include <stdexcept>
#include <string>

namespace crsadv {

// Process exit codes double as error categories.
enum class ErrorKind { kUsage = 1, kData = 2, kAdapter = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ErrorKind::kUsage, message) {}
};

// Malformed or inconsistent input data. `line` is 1-based when known.
class DataError : public Error {
 public:
  explicit DataError(const std::string& message,
                     std::optional<int> line = std::nullopt)
      : Error(ErrorKind::kData,
              line ? "line " + std::to_string(*line) + ": " + message
                   : message),
        line_(line) {}
  std::optional<int> line() const { return line_; }

 private:
  std::optional<int> line_;
};

// Any failure talking to an external recommender: child exit, malformed
// response, validation failure, timeout, HTTP status.
class AdapterError : public Error {
 public:
  explicit AdapterError(const std::string& message)
      : Error(ErrorKind::kAdapter, message) {}
};

}  // namespace crsadv

#endif  // CRSADV_ERRORS_H_
