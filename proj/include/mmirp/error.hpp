#pragma once

#include <stdexcept>
#include <string>

namespace mmirp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (instance files, CSV, flags).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input whose values break a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

// A schedule leaves some positive demand before its first delivery.
class InfeasibleDecodeError : public Error {
 public:
  using Error::Error;
};

// Loads of one period cannot be packed onto the fleet without splitting.
class PackingInfeasibleError : public Error {
 public:
  using Error::Error;
};

// No feasible schedule could be produced for the instance.
class InstanceInfeasibleError : public Error {
 public:
  using Error::Error;
};

class DegenerateDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmirp
