/*
 * zoneloc - zone-level WiFi RSS localization with belief functions
 * Copyright 2026 the zoneloc authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zoneloc {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number of the offending row.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Invalid input data or configuration. CLI exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Operation called outside its contract (empty set, frame mismatch, ...).
// CLI exit code 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Fusion left all mass on the empty set. CLI exit code 2.
class ConflictError : public Error {
 public:
  using Error::Error;
};

// The observation carries no reading for any modeled access point.
// CLI exit code 2.
class NoEvidenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace zoneloc
