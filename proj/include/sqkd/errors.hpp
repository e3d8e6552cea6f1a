// Copyright 2026 The sqkd-rate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace sqkd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: wrong dimensions, out-of-range probabilities,
/// non-unitary operators and the like.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// The protocol aborts: p_{0,0,0} is zero, so the observed noise is too
/// high for the bound to be evaluated.
class AbortError : public Error {
  public:
    using Error::Error;
};

/// A Monte Carlo conditioning class received no samples.
class InsufficientData : public Error {
  public:
    InsufficientData(std::string class_name)
        : Error("insufficient data: no samples in class '" + class_name + "'"),
          class_name_(std::move(class_name)) {}

    [[nodiscard]] const std::string &class_name() const noexcept {
        return class_name_;
    }

  private:
    std::string class_name_;
};

} // namespace sqkd
