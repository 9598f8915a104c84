#ifndef GOWERS_ERROR_H_
#define GOWERS_ERROR_H_

#include <stdexcept>
#include <string>

namespace gowers {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated an operation's precondition. The CLI maps this family
// to exit code 2.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Arguments live in different ambient spaces (different p or n).
class DimensionError : public ContractError {
 public:
  using ContractError::ContractError;
};

// A value lies outside the domain an operation is defined on.
class DomainError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Inversion of a (near) zero value was required.
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The input violates the hypothesis of the theorem an operation relies on
// (for instance k > p in the inverse search).
class UnsupportedHypothesisError : public ContractError {
 public:
  using ContractError::ContractError;
};

// Malformed serialized input.
class ParseError : public ContractError {
 public:
  using ContractError::ContractError;
};

// A computation would exceed the configured work or memory budget. Exit 3.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Two independent computations of the same quantity disagree, or a checked
// identity that is a theorem failed. Always indicates a bug.
class InternalConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace gowers

#endif  // GOWERS_ERROR_H_
