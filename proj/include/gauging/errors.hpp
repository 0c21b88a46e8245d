#pragma once

#include <stdexcept>
#include <string>

namespace gauging {

/// Precondition or input violation; the CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured search/enumeration budget was exhausted; CLI exit code 3.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gauging
