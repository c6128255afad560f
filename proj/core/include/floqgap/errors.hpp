// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace floqgap {

// Base of everything thrown by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: parameter domains, malformed configs, mismatched bases.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A certified inequality failed in strict mode.
class BoundViolation : public Error {
public:
  using Error::Error;
};

// Block spectral distance fell below the configured floor.
class SmallDivisorError : public Error {
public:
  using Error::Error;
};

// The ||G||_{inf,gamma} <= c_H/6 guard failed in strict mode.
class GapConditionViolated : public Error {
public:
  using Error::Error;
};

// Commutator series hit its term cap before reaching the tolerance.
class SeriesNotConverged : public Error {
public:
  using Error::Error;
};

// Grid commutation check failed for the commuting-case transform.
class NotCommutingError : public Error {
public:
  using Error::Error;
};

// Smallness condition ||Y|| + ||Z|| <= c_H/(4 pi C_{r+1}) failed in strict mode.
class SmallnessViolated : public Error {
public:
  using Error::Error;
};

// Iteration exceeded its hard step cap.
class NoConvergenceError : public Error {
public:
  using Error::Error;
};

// Propagation lost more norm than the abort threshold allows.
class StepUnstable : public Error {
public:
  using Error::Error;
};

// a(t) <= 0 detected for the discrete model drive.
class PositivityViolated : public Error {
public:
  using Error::Error;
};

// Theorem's exponent formula has a nonpositive denominator.
class BoundVacuous : public Error {
public:
  using Error::Error;
};

// Trace tail unusable for log-log fitting.
class DegenerateTrace : public Error {
public:
  using Error::Error;
};

}  // namespace floqgap
