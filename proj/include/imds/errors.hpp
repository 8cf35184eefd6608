#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imds {

/// Base for every error raised by the localization toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violated a documented precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// The measured range graph splits into more than one component.
class DisconnectedError : public Error {
public:
    explicit DisconnectedError(std::size_t components)
        : Error("range graph is disconnected (" + std::to_string(components) + " components)"),
          components_(components) {}

    std::size_t components() const noexcept { return components_; }

private:
    std::size_t components_;
};

/// A numerical routine failed to converge or produced non-finite output.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A sweep configuration cannot be satisfied (for example, no connected graph could be drawn).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// Reading or writing a file failed, or its contents were malformed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace imds
