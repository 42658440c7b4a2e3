#pragma once

#include <stdexcept>
#include <string>

namespace hilbloc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed fact contradicts a classification or structure statement.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

// A configured cap (truncation, variable count, attempts) was exceeded.
class ResourceCap : public Error {
 public:
  using Error::Error;
};

}  // namespace hilbloc
