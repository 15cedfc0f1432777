#pragma once

#include <stdexcept>
#include <string>

namespace hetlab {

// Malformed parameters, bad configuration files, unusable flag values.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numeric-domain violations (non-finite inputs, x <= 0 where positivity is required).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hetlab
