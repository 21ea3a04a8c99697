// Copyright 2026 The qvbench Authors
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

#include <stdexcept>
#include <string>

namespace qvb {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, invalid configuration, contract violations
/// on arguments. The CLI maps these to exit code 1.
class InvalidInput : public Error {
   public:
    using Error::Error;
};

/// A request exceeds what a backend can hold (qubit count, memory).
/// The CLI maps these (and other runtime failures) to exit code 2.
class CapacityError : public Error {
   public:
    using Error::Error;
};

}  // namespace qvb
