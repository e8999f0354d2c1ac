// Copyright 2026 The Capacity Studio Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAPSTUDIO_ERRORS_HPP
#define CAPSTUDIO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace capstudio {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (bad n, empty set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Vector or matrix sizes disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input data is incomplete, e.g. a capacity with missing coefficients.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A capacity fails the boundary or monotonicity conditions.
class InvalidCapacityError : public Error {
 public:
  using Error::Error;
};

/// A numerical routine could not produce a trustworthy answer.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-range content in an input document.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace capstudio

#endif  // CAPSTUDIO_ERRORS_HPP
