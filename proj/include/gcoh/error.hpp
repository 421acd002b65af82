#pragma once

#include <stdexcept>
#include <string>

namespace gcoh {

/// Input outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Well-formed input that this library deliberately does not handle.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A prime of bad reduction was passed where a good prime is required.
class BadReductionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An Euler product was requested outside its half-plane of absolute convergence.
class ConvergenceDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The CM character normalization could not be pinned down.
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gcoh
