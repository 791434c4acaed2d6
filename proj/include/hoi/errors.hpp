#pragma once

#include <stdexcept>
#include <string>

namespace hoi {

// Base for all toolkit errors. CLI maps these to exit code 2
// (data/validation) unless a more specific code applies.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input record; carries the 1-based line number.
struct ParseError : Error {
    int line;
    ParseError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct DuplicateError : Error {
    int line;
    DuplicateError(int line_, const std::string& msg)
        : Error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ShapeError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct LabelError : Error {
    using Error::Error;
};

struct InputError : Error {
    using Error::Error;
};

struct StateError : Error {
    using Error::Error;
};

struct EvalError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// Non-finite loss during training. CLI exit code 3.
struct DivergenceError : Error {
    using Error::Error;
};

}  // namespace hoi
