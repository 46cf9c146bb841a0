// Copyright 2026 The opfid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPFID_ERRORS_HPP
#define OPFID_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opfid {

/// Malformed input: bad sizes, non-Hermitian matrices, unnormalized states.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem exceeds the configured memory budget (site cap).
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigensolver or SVD failed to converge.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Wraps a failure inside a parameter sweep with the offending grid value.
class sweep_error : public std::runtime_error {
 public:
  sweep_error(double param_value, const std::string& what)
      : std::runtime_error("at parameter value " + std::to_string(param_value) +
                           ": " + what),
        param_value_(param_value) {}

  double param_value() const noexcept { return param_value_; }

 private:
  double param_value_;
};

}  // namespace opfid

#endif  // OPFID_ERRORS_HPP
