// Copyright 2026 The vqopt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types shared by all vqopt modules. The CLI maps every
 * vqopt::Error to exit code 1.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace vqopt {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Problem too large for exhaustive enumeration or dense simulation.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// A value that should hold by construction does not (e.g. unnormalized state).
class IntegrityError : public Error {
  public:
    using Error::Error;
};

/// Malformed or version-mismatched persisted data.
class SchemaError : public Error {
  public:
    using Error::Error;
};

} // namespace vqopt
