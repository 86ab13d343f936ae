#pragma once

#include <stdexcept>
#include <string>

namespace richter {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scalar function or energy was evaluated outside of where it is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Determinant non-positive or numerically zero.
class SingularInput : public Error {
 public:
  using Error::Error;
};

// Stress and logarithmic stretch do not share an eigenbasis.
class NotCoaxial : public Error {
 public:
  using Error::Error;
};

}  // namespace richter
