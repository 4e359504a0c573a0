// Copyright 2026 The aqrm Authors
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

#ifndef AQRM_ERRORS_HPP_
#define AQRM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace aqrm {

// Bad arguments surface as std::invalid_argument, mathematical domain
// violations (division by zero, a in 2Z for the intertwiner) as
// std::domain_error. The two types below cover the remaining outcomes the
// C API and CLI distinguish.

/// A computed identity or cross-check did not hold.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative computation ran out of budget before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aqrm

#endif  // AQRM_ERRORS_HPP_
