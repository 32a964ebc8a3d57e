#ifndef MANET_ERRORS_HPP
#define MANET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace manet {

// Base of every error thrown by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Bad parameter values (alpha out of range, zero devices, ...).
class ConfigError : public Error
{
public:
    using Error::Error;
};

class InvalidLevelError : public ConfigError
{
public:
    using ConfigError::ConfigError;
};

class OutOfBoundsError : public Error
{
public:
    using Error::Error;
};

// Malformed document. `field()` names the offending field when known.
class ParseError : public Error
{
public:
    ParseError(std::string field, const std::string& what)
        : Error("parse error at '" + field + "': " + what), field_(std::move(field))
    {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Well-formed input that violates a model invariant.
class ValidationError : public Error
{
public:
    using Error::Error;
};

class NoFeasiblePathError : public Error
{
public:
    NoFeasiblePathError() : Error("no feasible path") {}
    using Error::Error;
};

class LimitExceededError : public Error
{
public:
    using Error::Error;
};

class IoError : public Error
{
public:
    using Error::Error;
};

} // namespace manet

#endif // MANET_ERRORS_HPP
