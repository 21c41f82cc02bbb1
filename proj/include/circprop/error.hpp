#pragma once

#include <stdexcept>
#include <string>

namespace circprop {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user-facing input: odd grid sizes, non-coprime times, unknown modes.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Argument outside the region where an operation is defined or converges.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A truncation or iteration cap was hit before the requested accuracy.
class ToleranceError : public Error {
public:
    using Error::Error;
};

/// Evolution lost unitarity beyond the allowed drift.
class NormDriftError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace circprop
