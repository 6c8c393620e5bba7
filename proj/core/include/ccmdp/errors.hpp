#pragma once

#include <stdexcept>
#include <string>

namespace ccmdp {

/// Rejected input: malformed model, dimension mismatch, wrong mode, etc.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Instance exceeds an enumeration or candidate-count limit.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Inconsistent configuration (e.g. a detector grid that cannot express the threshold).
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ccmdp
