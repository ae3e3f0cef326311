#pragma once

#include <stdexcept>
#include <string>

namespace morawetz {

/// Invalid geometry, mesh or formulation parameters.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised by the banded factorisations when a pivot vanishes.
class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(const std::string& what, std::size_t column)
        : std::runtime_error(what), column_(column) {}

    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    std::size_t column_;
};

/// An operation needs the exact solution but the problem carries none.
class MissingExactSolution : public std::logic_error {
public:
    explicit MissingExactSolution(const std::string& what) : std::logic_error(what) {}
};

} // namespace morawetz
