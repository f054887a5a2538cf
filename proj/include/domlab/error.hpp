#pragma once

#include <stdexcept>
#include <string>

namespace domlab {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input (poset files, valuations, codes, maps).
class ParseError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A size guard (upper-set cap, grid cap, Fin(P) cap) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace domlab
