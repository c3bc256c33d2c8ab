// Copyright 2026 The qss-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qss {

// Every error raised by the library derives from Error so callers (the CLI in
// particular) can separate input/contract failures from everything else.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModulusMismatchError : public Error {
 public:
  using Error::Error;
};

class NotPrimeError : public Error {
 public:
  using Error::Error;
};

class ZeroInverseError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class DuplicatePointError : public Error {
 public:
  using Error::Error;
};

class RegisterError : public Error {
 public:
  using Error::Error;
};

class NotNormalizedError : public Error {
 public:
  using Error::Error;
};

class NotFreshError : public Error {
 public:
  using Error::Error;
};

class EntangledDiscardError : public Error {
 public:
  using Error::Error;
};

class SubsystemTooLargeError : public Error {
 public:
  using Error::Error;
};

class LayoutMismatchError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class SubsetError : public Error {
 public:
  using Error::Error;
};

class ScaleGuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace qss
