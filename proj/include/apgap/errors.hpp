// Copyright 2025 the apgap authors
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace apgap {

// Invalid argument or configuration. CLI exit code 1.
class domain_error : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Series truncation did not reach the requested tolerance. CLI exit code 2.
class accuracy_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Memory or search budget exceeded. CLI exit code 2.
class resource_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// 64-bit arithmetic would overflow, or a scan ran off the end of the
// representable range. CLI exit code 2.
class range_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A gap record failed primality/compositeness checks. offending_j() is the
// first failing step index: 0 = p_minus not prime, k = p_plus not prime,
// 0 < j < k = interior class point p_minus + j*q is prime. CLI exit code 3.
class verification_error : public std::runtime_error {
  public:
    verification_error(const std::string& msg, uint64_t offending_j)
        : std::runtime_error(msg), offending_j_(offending_j) {}
    uint64_t offending_j() const { return offending_j_; }

  private:
    uint64_t offending_j_;
};

// Malformed record in a file; line() is 1-based. CLI exit code 1.
class parse_error : public std::runtime_error {
  public:
    parse_error(const std::string& msg, size_t line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    size_t line() const { return line_; }

  private:
    size_t line_;
};

// Stored record contradicts recomputation, or a checkpoint does not match
// the requested run. CLI exit code 1.
class validation_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace apgap
