// SPDX-License-Identifier: Apache-2.0
//
// hybridprec: alternating-minimization hybrid precoding for mmWave MIMO
// Copyright (C) 2026 The hybridprec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HYBRIDPREC_ERRORS_HPP
#define HYBRIDPREC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hybridprec {

// Malformed arguments: wrong shapes, non-finite data, out-of-range indices.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Configuration rejected before any simulation work starts.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Numerical degeneracy in an otherwise well-formed problem.
class DegenerateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DegenerateChannel : public DegenerateError {
public:
  using DegenerateError::DegenerateError;
};

class DegenerateCombiner : public DegenerateError {
public:
  using DegenerateError::DegenerateError;
};

class DegeneratePrecoder : public DegenerateError {
public:
  using DegenerateError::DegenerateError;
};

// x_i + v_i vanished for some coordinate; the caller should shrink the step.
class RetractionSingularity : public DegenerateError {
public:
  using DegenerateError::DegenerateError;
};

// Iterative solver gave up (iteration cap, numerical breakdown).
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, double gap, int iterations)
      : std::runtime_error(what), gap_(gap), iterations_(iterations) {}

  double gap() const noexcept { return gap_; }
  int iterations() const noexcept { return iterations_; }

private:
  double gap_;
  int iterations_;
};

} // namespace hybridprec

#endif
