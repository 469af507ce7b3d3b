// Copyright 2026 The Authors.
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

#ifndef PERMITLAB_ERRORS_H_
#define PERMITLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace permitlab {

// Malformed or inconsistent input data.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// A size guard refused to build an object. The message carries the counts.
class SizeGuardExceeded : public std::length_error {
 public:
  explicit SizeGuardExceeded(const std::string& what)
      : std::length_error(what) {}
};

// A structural precondition of a construction does not hold.
class PreconditionFailed : public std::logic_error {
 public:
  explicit PreconditionFailed(const std::string& what)
      : std::logic_error(what) {}
};

// An inequality or identity that must hold exactly was found violated.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace permitlab

#endif  // PERMITLAB_ERRORS_H_
