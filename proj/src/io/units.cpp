#include "hhq/io/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "hhq/constants.hpp"
#include "hhq/errors.hpp"

namespace hhq::io {

namespace {

struct UnitEntry {
    std::string_view symbol;
    Dimension dim;
    double factor;
};

struct Prefix {
    std::string_view symbol;
    double factor;
};

constexpr std::array<Prefix, 9> prefixes{{
    {"", 1.0}, {"f", 1e-15}, {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6}, {"m", 1e-3}, {"k", 1e3}, {"M", 1e6}, {"G", 1e9},
}};

constexpr std::array<UnitEntry, 12> base_units{{
    {"A", Dimension::current, 1.0},
    {"V", Dimension::voltage, 1.0},
    {"S", Dimension::conductance, 1.0},
    {"F", Dimension::capacitance, 1.0},
    {"Ohm", Dimension::resistance, 1.0},
    {"H", Dimension::inductance, 1.0},
    {"s", Dimension::time, 1.0},
    {"rad/s", Dimension::angular_frequency, 1.0},
    {"Hz", Dimension::angular_frequency, constants::two_pi},
    {"J", Dimension::energy, 1.0},
    {"K", Dimension::temperature, 1.0},
    {"C", Dimension::charge, 1.0},
}};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::parse, msg); }

/// Resolves a unit token (without any /cm2 suffix) to its dimension and SI factor.
bool lookup(std::string_view unit, Dimension& dim, double& factor)
{
    if (unit == "1" || unit == "-") {
        dim = Dimension::dimensionless;
        factor = 1.0;
        return true;
    }
    if (unit == "cm2") {
        dim = Dimension::area;
        factor = 1.0;
        return true;
    }
    if (unit == "GHz_h") {
        dim = Dimension::energy;
        factor = constants::planck * 1e9;
        return true;
    }
    // Rates: 1/s, 1/ms, 1/us, ...
    if (unit.starts_with("1/")) {
        Dimension d{};
        double f = 0.0;
        if (lookup(unit.substr(2), d, f) && d == Dimension::time) {
            dim = Dimension::rate;
            factor = 1.0 / f;
            return true;
        }
        return false;
    }
    for (const auto& base : base_units) {
        if (!unit.ends_with(base.symbol)) {
            continue;
        }
        const std::string_view prefix = unit.substr(0, unit.size() - base.symbol.size());
        for (const auto& p : prefixes) {
            if (p.symbol == prefix) {
                dim = base.dim;
                factor = p.factor * base.factor;
                return true;
            }
        }
    }
    return false;
}

} // namespace

std::string_view unit_symbol(Dimension dim)
{
    switch (dim) {
    case Dimension::dimensionless: return "1";
    case Dimension::current: return "A";
    case Dimension::voltage: return "V";
    case Dimension::conductance: return "S";
    case Dimension::capacitance: return "F";
    case Dimension::resistance: return "Ohm";
    case Dimension::inductance: return "H";
    case Dimension::time: return "s";
    case Dimension::angular_frequency: return "rad/s";
    case Dimension::rate: return "1/s";
    case Dimension::energy: return "J";
    case Dimension::temperature: return "K";
    case Dimension::charge: return "C";
    case Dimension::area: return "cm2";
    }
    return "?";
}

ParsedQuantity parse_quantity(std::string_view text, Dimension expected)
{
    text = trim(text);
    if (text.empty()) {
        fail("missing value");
    }
    double number = 0.0;
    const char* begin = text.data();
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, number);
    if (ec == std::errc::result_out_of_range) {
        fail("value out of range: '" + std::string(text) + "'");
    }
    if (ec != std::errc{}) {
        fail("malformed number: '" + std::string(text) + "'");
    }
    if (!std::isfinite(number)) {
        fail("non-finite value: '" + std::string(text) + "'");
    }

    std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(end - ptr)));
    ParsedQuantity q;
    if (unit.empty()) {
        q.value = number;
        return q;
    }
    if (unit.ends_with("/cm2") && unit.size() > 4) {
        q.per_area = true;
        unit.remove_suffix(4);
    }
    Dimension dim{};
    double factor = 0.0;
    if (!lookup(unit, dim, factor)) {
        fail("unknown unit '" + std::string(unit) + "'");
    }
    if (dim != expected) {
        fail("unit mismatch: '" + std::string(unit) + "' is not " + std::string(unit_symbol(expected)));
    }
    q.value = number * factor;
    if (!std::isfinite(q.value)) {
        fail("non-finite value after unit conversion: '" + std::string(text) + "'");
    }
    return q;
}

std::string format_number(double v)
{
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

} // namespace hhq::io
