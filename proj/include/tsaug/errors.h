// Copyright 2026 The tsaug Authors.
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

#ifndef TSAUG_ERRORS_H_
#define TSAUG_ERRORS_H_

#include <stdexcept>
#include <string>

namespace tsaug {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent or missing configuration (plans, backend specs, CLI flags).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Input data that fails to parse or violates a record invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Backend startup or transport failure. Aborts the whole batch.
class BackendError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tsaug

#endif  // TSAUG_ERRORS_H_
