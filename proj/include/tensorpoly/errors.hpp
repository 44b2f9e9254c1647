#pragma once

#include <stdexcept>
#include <string>

namespace tensorpoly {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed graph, template or rotation data.
class StructureError : public Error {
 public:
  using Error::Error;
};

// An operation applied outside its precondition (contracting a passive
// edge, contracting a ribbon self-loop, ...).
class OperationError : public Error {
 public:
  using Error::Error;
};

// Unknown edge ids, invalid subsets and other bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed input files.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace tensorpoly
