#pragma once

#include <stdexcept>
#include <string>

namespace minpart {

// Invalid argument / precondition violation (bad b, grid too coarse, ...).
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& msg) : std::invalid_argument(msg) {}
};

// Structural defect in a mask or partition (disconnected part, empty mask, ...).
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure (factorization breakdown, residual tolerance not reached, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input file (config, CSV).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem failure; the message carries the offending path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace minpart
