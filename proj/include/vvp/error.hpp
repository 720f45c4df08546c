#pragma once

#include <stdexcept>
#include <string>

namespace vvp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error { using Error::Error; };
class GeometryError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class CapabilityError : public Error { using Error::Error; };
class UsageError : public Error { using Error::Error; };
class ConfigurationError : public Error { using Error::Error; };
class IoError : public Error { using Error::Error; };

/// Raised when a sparse factorisation breaks down.
class SolverFailure : public Error {
public:
    SolverFailure(const std::string& what, long pivot = -1)
        : Error(what), pivot_(pivot) {}
    /// Column at which the factorisation failed, or -1 when unknown.
    long pivot() const noexcept { return pivot_; }

private:
    long pivot_;
};

/// Configuration error that names the offending key.
class ValidationError : public Error {
public:
    ValidationError(std::string key, const std::string& what)
        : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace vvp
