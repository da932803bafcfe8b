#pragma once

#include <stdexcept>
#include <string>

namespace lrfhss {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// count > obw_count^max_len: distinct sequences cannot exist
class InfeasibleUniquenessError : public Error {
 public:
  using Error::Error;
};

class UnknownPresetError : public Error {
 public:
  using Error::Error;
};

// horizon too short for the requested fragment count
class InvalidHorizonError : public Error {
 public:
  using Error::Error;
};

// a transmission addressed a cell outside the matrix
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

class OutOfOrderColumnError : public Error {
 public:
  using Error::Error;
};

// enumeration bound exceeded in the brute-force solver
class InstanceTooLargeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lrfhss
