#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treelie {

// Bad genus / index / support configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller passed arguments of the wrong kind (side mismatch, arity mismatch...).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Degree overflow and similar domain violations.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace treelie
