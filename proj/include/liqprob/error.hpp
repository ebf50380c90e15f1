#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace liqprob {

enum class ErrorKind {
    Domain,              ///< argument outside a function's mathematical domain
    Validation,          ///< value violates a type invariant
    DegenerateScenario,  ///< s0 <= s_liq where a strictly positive gap is required
    Config,              ///< inconsistent simulation configuration
    Format,              ///< malformed input file
    Ordering,            ///< rows out of date order
    InsufficientData,
    ZeroVolatility,
    EmptyOutput,
    Io,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` drives CLI exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::optional<std::size_t> row = std::nullopt)
        : std::runtime_error(message), kind_(kind), row_(row) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

    /// 1-based data row for parse errors (header is row 0).
    [[nodiscard]] std::optional<std::size_t> row() const noexcept { return row_; }

private:
    ErrorKind kind_;
    std::optional<std::size_t> row_;
};

}  // namespace liqprob
