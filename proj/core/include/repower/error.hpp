#pragma once

#include <stdexcept>
#include <string>

namespace repower {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of a function (e.g. a quantile of 0).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Inputs violate a documented precondition (mismatched lengths, bad level...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

}  // namespace repower
