// Copyright 2026 The qpd Authors
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

#ifndef QPD_ERRORS_HPP_
#define QPD_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qpd {

// Base class for every error raised by the library. Nothing is clamped or
// silently repaired; callers see one of these instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter (angle, count, index) outside its documented domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

// An operator handed to the protocol is not unitary.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A state whose squared norm is not 1.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

// An iterated-game policy violating its construction rules.
class PolicyError : public Error {
 public:
  using Error::Error;
};

// No 3-parameter operator reproduces the target payoff row.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpd

#endif  // QPD_ERRORS_HPP_
