#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dfarm {

// Root of every error the library raises. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A value outside the domain of a factor, unit, coordinate or distribution.
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A runner or other pluggable component broke its contract.
class ContractViolation : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DegenerateSample : public Error {
public:
    using Error::Error;
};

class TrainingError : public Error {
public:
    using Error::Error;
};

}  // namespace dfarm
