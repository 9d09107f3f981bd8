#pragma once

#include <stdexcept>

namespace rchroma {

// Argument outside the mathematical domain of an operation (t outside the
// schedule, alpha outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A value that has no preimage, e.g. an alpha another schedule never reaches.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// Grid shapes that are not square powers of two, or do not agree.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rchroma
