#include "hhq/errors.hpp"

#include <cstdio>

namespace hhq {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::domain: return "domain error";
    case ErrorKind::integration: return "integration error";
    case ErrorKind::instability: return "instability error";
    case ErrorKind::resolution: return "resolution error";
    case ErrorKind::quadrature: return "quadrature failure";
    case ErrorKind::axiom_violation: return "axiom violation";
    case ErrorKind::insufficient_data: return "insufficient data";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::io: return "I/O error";
    }
    return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind)
{
}

namespace {
std::string with_time(double time, const std::string& what)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, " (at t = %.9g s)", time);
    return what + buf;
}
} // namespace

IntegrationError::IntegrationError(double time, const std::string& what, ErrorKind kind)
    : Error(kind, with_time(time, what)), time_(time)
{
}

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::parse:
    case ErrorKind::parameter:
        return 2;
    case ErrorKind::integration:
    case ErrorKind::instability:
    case ErrorKind::domain:
    case ErrorKind::axiom_violation:
        return 3;
    case ErrorKind::resolution:
    case ErrorKind::quadrature:
    case ErrorKind::insufficient_data:
        return 4;
    case ErrorKind::io:
        return 5;
    }
    return 1;
}

} // namespace hhq
