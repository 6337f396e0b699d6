// Copyright 2026 The Percolab Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace percolab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or infeasible input: out-of-range vertex, bad probability, unknown
// graph description, infeasible sprinkling plan.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A memory or enumeration budget would be exceeded.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An internal numeric invariant failed (normalization drift, a path count
// that is not an integer, an integer that does not fit).
class NumericError : public Error {
 public:
  using Error::Error;
};

// An iterative procedure did not reach its stopping rule.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace percolab
