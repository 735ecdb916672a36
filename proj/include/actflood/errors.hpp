#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace actflood {

// Root of every error the library throws deliberately.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input has the wrong shape (sequence lengths disagree, malformed text).
class StructuralError : public Error {
public:
    using Error::Error;
};

// Text input could not be parsed; carries the 1-based line number.
class ParseError : public StructuralError {
public:
    ParseError(std::size_t line, const std::string& what)
        : StructuralError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Degree statistics are degenerate (all active-active degrees zero).
class DegenerateSpecError : public Error {
public:
    using Error::Error;
};

// nu11 <= 1: the limit formula does not apply.
class SubcriticalError : public Error {
public:
    using Error::Error;
};

// A family preset cannot be built from the given parameters.
class ConstructionError : public Error {
public:
    using Error::Error;
};

// Rejection sampling for a simple graph ran out of attempts.
class SaturationError : public Error {
public:
    SaturationError(std::size_t attempts, std::size_t self_loops, std::size_t parallel)
        : Error("no simple realization after " + std::to_string(attempts) +
                " attempts (last attempt: " + std::to_string(self_loops) + " self-loops, " +
                std::to_string(parallel) + " parallel edges)"),
          attempts_(attempts) {}

    std::size_t attempts() const noexcept { return attempts_; }

private:
    std::size_t attempts_;
};

// An operation declines to run (size cap exceeded, too little data).
class RefusalError : public Error {
public:
    using Error::Error;
};

// Plan or command-line configuration is invalid.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace actflood
