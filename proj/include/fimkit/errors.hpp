#pragma once

#include <stdexcept>
#include <string>

namespace fimkit {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Objects of different arity (m) were combined.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Shapes or injections that do not fit together.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// An object lies outside the box on which a module is known.
class BoxError : public Error {
public:
  using Error::Error;
};

class PaddingRangeError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

/// Requested analysis is not available for the chosen field.
class UnsupportedError : public Error {
public:
  using Error::Error;
};

/// A computation produced something that contradicts a structural guarantee.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace fimkit
