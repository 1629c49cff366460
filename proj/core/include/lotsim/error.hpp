// Copyright 2026 The lotsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace lotsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad shape, out-of-range parameter, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two objects that must live on the same Fock space (or on disjoint modes) do not.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

/// Photon-number truncation discarded more weight than the configured guard allows.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// An outcome pattern or projection has structurally zero probability.
class ZeroProbability : public Error {
 public:
  explicit ZeroProbability(const std::string& what, double probability)
      : Error(what), probability_(probability) {}
  double probability() const noexcept { return probability_; }

 private:
  double probability_;
};

/// A numerical invariant (Hermiticity, unitarity, completeness) failed beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace lotsim
