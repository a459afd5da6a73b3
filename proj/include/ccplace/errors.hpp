// Copyright 2026 The ccplace Authors
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

#ifndef CCPLACE_ERRORS_HPP_
#define CCPLACE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ccplace {

// Invalid inputs are reported with std::invalid_argument.

// An exact computation would exceed one of the enumeration guards.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative solver hit its iteration cap. Carries the best certified
// optimality gap reached so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_bound)
      : std::runtime_error(what), best_bound_(best_bound) {}
  double best_bound() const noexcept { return best_bound_; }

 private:
  double best_bound_;
};

}  // namespace ccplace

#endif  // CCPLACE_ERRORS_HPP_
