#pragma once

#include <stdexcept>
#include <string>

namespace expfield {

// Base of every library error. The CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input or a violated operation precondition (exit status 2).
class InputError : public Error {
 public:
  using Error::Error;
};

// The Groebner pair budget was exhausted (exit status 3).
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in the presented field") {}
};

// exp was applied outside the domain A(F) of the partial exponential map.
class ExpUndefined : public InputError {
 public:
  explicit ExpUndefined(const std::string& argument, const std::string& why = "argument not in A(F)")
      : InputError("exp undefined at " + argument + ": " + why), argument_(argument) {}
  const std::string& argument() const { return argument_; }

 private:
  std::string argument_;
};

}  // namespace expfield
