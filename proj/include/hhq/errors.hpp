#pragma once

#include <stdexcept>
#include <string>

namespace hhq {

enum class ErrorKind {
    parameter,
    domain,
    integration,
    instability,
    resolution,
    quadrature,
    axiom_violation,
    insufficient_data,
    parse,
    io,
};

const char* to_string(ErrorKind kind);

/// Base error for the library. The kind selects the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a time stepper produces a non-finite or out-of-range state.
class IntegrationError : public Error {
public:
    IntegrationError(double time, const std::string& what, ErrorKind kind = ErrorKind::integration);

    [[nodiscard]] double time() const noexcept { return time_; }

private:
    double time_;
};

/// Exit code used by the `hhq` tool: 2 parse, 3 integration, 4 resolution, 5 I/O.
int exit_code(ErrorKind kind);

} // namespace hhq
