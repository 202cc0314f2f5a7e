#pragma once

#include <stdexcept>
#include <string>

namespace bordcalc {

// Malformed or inconsistent input: files, fixture data, arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A division that was supposed to be exact left a remainder.
class IntegralityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested quantity depends on data the caller has not supplied.
class UnresolvedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bordcalc
