#pragma once

#include <stdexcept>
#include <string>

namespace snipassist {

/// Base class for every error the engine raises.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller passed an argument that violates an operation's precondition.
class ArgumentError : public Error {
  public:
    using Error::Error;
};

class NotFoundError : public Error {
  public:
    using Error::Error;
};

/// Operation is not valid in the object's current state (e.g. rating twice).
class StateError : public Error {
  public:
    using Error::Error;
};

/// The document no longer holds the text an edit expects to replace.
class ConflictError : public Error {
  public:
    using Error::Error;
};

/// Unreadable input or an on-disk artifact with the wrong format tag.
class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace snipassist
