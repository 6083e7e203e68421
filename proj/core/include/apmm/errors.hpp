#pragma once

#include <stdexcept>
#include <string>

namespace apmm {

/// Invalid input or configuration (bad mesh size, epsilon out of range, unknown config key).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A solver produced non-finite values or an operator was applied outside its domain.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace apmm
