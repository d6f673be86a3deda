#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhq/drive.hpp"
#include "hhq/hh/classical.hpp"
#include "hhq/io/units.hpp"

namespace hhq::io {

enum class Model { classical, classical_full, classical_adiabatic, quantized, qmem_sme, two_tl, sc_feasibility };

std::string_view to_string(Model model);

struct DriveConfig {
    std::optional<double> I0;     ///< A
    std::optional<double> Omega;  ///< rad/s
    Waveform waveform = Waveform::sinusoid;
    std::string samples_file;     ///< two-column CSV (t in s, I in A) for sampled drives
};

struct IntegratorConfig {
    std::optional<double> dt;  ///< s; default 1e-3 of the natural period
    double tolerance = 1e-6;
    hh::Scheme scheme = hh::Scheme::rk4;
    std::optional<double> periods;
    std::optional<double> t_end;  ///< s; overrides periods
    std::string path = "impedance";  ///< quantized model: "impedance" or "gate"
};

struct OutputConfig {
    std::string csv = "trace.csv";
    std::string json = "metrics.json";
    std::vector<std::string> channels;  ///< empty: every channel
};

struct ParameterValue {
    double value = 0.0;  ///< SI, per-area values already multiplied by the area
    int line = 0;        ///< 0 when the value is a default
};

/// One validated run description. Parameters hold every documented key for the model with
/// defaults filled in, keyed by name, in SI units.
struct ScenarioConfig {
    Model model = Model::classical;
    std::string name;
    std::uint64_t seed = 0;
    DriveConfig drive;
    std::map<std::string, ParameterValue> parameters;
    IntegratorConfig integrator;
    OutputConfig outputs;
    std::uint64_t source_hash = 0;  ///< FNV-1a of the scenario text

    [[nodiscard]] double param(const std::string& key) const;
    [[nodiscard]] bool given(const std::string& key) const;
};

/// Parses the line-oriented `[section]` / `key = value` format. Errors carry line numbers.
ScenarioConfig parse_scenario(std::string_view text);

/// Reads and parses a file; unreadable files raise Error(io).
ScenarioConfig load_scenario(const std::string& path);

/// Documented parameter keys for a model, in declaration order, with their SI unit.
std::vector<std::pair<std::string, Dimension>> parameter_keys(Model model);

std::uint64_t fnv1a(std::string_view text);

} // namespace hhq::io
