#pragma once

#include <stdexcept>
#include <string>

namespace qapbench {

// Invalid domain input (bad permutation, size mismatch, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A hard enumeration/memory cap was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric procedure failed to converge or degenerated.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad experiment configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A pipeline stage is missing inputs produced by an earlier stage.
class DependencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qapbench
