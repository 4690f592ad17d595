#pragma once

#include <stdexcept>
#include <string>

namespace freeprob {

/// Invalid argument or violated precondition.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A configured enumeration or oracle size cap was exceeded.
class SizeLimitError : public std::length_error {
public:
  using std::length_error::length_error;
};

/// Floating-point or linear-algebra failure (eigensolver, non-finite values).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace freeprob
