#pragma once

#include <stdexcept>
#include <string>

namespace cycloid {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class DegreeMismatch : public Error
{
public:
  DegreeMismatch(std::size_t a, std::size_t b)
    : Error("degree mismatch: " + std::to_string(a) + " vs " +
            std::to_string(b))
  {}
};

/// A configured safety bound (group order, search size, Dehornoy search
/// depth, ...) was exceeded.
class CapExceeded : public Error
{
public:
  using Error::Error;
};

/// A precondition on the arguments of an operation does not hold.
class PreconditionFailed : public Error
{
public:
  using Error::Error;
};

/// Raised when a cooperative cancellation token fires mid-search.
class Cancelled : public Error
{
public:
  Cancelled() : Error("operation cancelled") {}
};

class ParseError : public Error
{
public:
  using Error::Error;
};

} // namespace cycloid
