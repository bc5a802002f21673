#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dmotto {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class InvalidTemperature : public Error {
public:
    using Error::Error;
};

// A caller broke a documented precondition (e.g. non-Hermitian input).
class ContractError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

class UndefinedEfficiency : public Error {
public:
    using Error::Error;
};

// Parameters fall outside the level ordering a closed form assumes.
class RegimeError : public Error {
public:
    using Error::Error;
};

class UnsupportedProtocol : public Error {
public:
    using Error::Error;
};

class InvalidState : public Error {
public:
    using Error::Error;
};

class UnknownClaim : public Error {
public:
    using Error::Error;
};

// A first-principles identity did not hold. Indicates a bug, never bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    // line/column are 1-based; 0 means "not tied to a source position".
    ConfigError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace dmotto
