#pragma once

#include <stdexcept>
#include <string>

namespace discopt {

// Bad arguments or preconditions (negative x, odd t, overlapping components, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The requested structure does not exist (no perfect matching, isolated vertex, ...).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A solution or allocation failed a structural check.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; message carries file/field context.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace discopt
