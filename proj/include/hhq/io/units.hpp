#pragma once

#include <string>
#include <string_view>

namespace hhq::io {

enum class Dimension {
    dimensionless,
    current,            // A
    voltage,            // V
    conductance,        // S
    capacitance,        // F
    resistance,         // Ohm
    inductance,         // H
    time,               // s
    angular_frequency,  // rad/s
    rate,               // 1/s
    energy,             // J
    temperature,        // K
    charge,             // C
    area,               // cm2
};

/// SI symbol written into CSV headers and error messages.
std::string_view unit_symbol(Dimension dim);

struct ParsedQuantity {
    double value = 0.0;     ///< SI, before any per-area scaling
    bool per_area = false;  ///< the unit carried a "/cm2" suffix
};

/// Parses "<number> [unit]". A bare number is taken in the key's SI unit. Throws
/// Error(parse) on malformed numbers, non-finite values or a unit of the wrong dimension.
ParsedQuantity parse_quantity(std::string_view text, Dimension expected);

/// Shortest text that reads back to the same double.
std::string format_number(double v);

} // namespace hhq::io
