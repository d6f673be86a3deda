#include "hhq/io/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "hhq/constants.hpp"
#include "hhq/errors.hpp"

namespace hhq::io {

namespace {

constexpr double unset = std::numeric_limits<double>::quiet_NaN();

enum class Kind { real, integer };

struct ParamSpec {
    const char* key;
    Dimension dim;
    double fallback;       ///< NaN: derived later by the runner
    bool per_area = false; ///< fallback is per cm2 and scales with `area`
    Kind kind = Kind::real;
};

using D = Dimension;

const std::vector<ParamSpec>& schema(Model model)
{
    static const std::vector<ParamSpec> classical{
        {"area", D::area, 1.0},
        {"Cg", D::capacitance, 1e-6, true},
        {"gK_max", D::conductance, 36e-3, true},
        {"VK", D::voltage, 0.0},
        {"V_init", D::voltage, 0.0},
        {"n_init", D::dimensionless, unset},
    };
    static const std::vector<ParamSpec> full{
        {"area", D::area, 1.0},
        {"Cg", D::capacitance, 1e-6, true},
        {"gK_max", D::conductance, 36e-3, true},
        {"gNa_max", D::conductance, 120e-3, true},
        {"gL", D::conductance, 0.3e-3, true},
        {"VK", D::voltage, 0.0},
        {"VNa", D::voltage, 115e-3},
        {"VL", D::voltage, 10.613e-3},
        {"V_init", D::voltage, 0.0},
        {"n_init", D::dimensionless, unset},
        {"m_init", D::dimensionless, unset},
        {"h_init", D::dimensionless, unset},
    };
    static const std::vector<ParamSpec> adiabatic{
        {"area", D::area, 1.0},
        {"Cg", D::capacitance, 1e-6, true},
        {"gK_max", D::conductance, 36e-3, true},
        {"VK", D::voltage, 0.0},
        {"n_init", D::dimensionless, unset},
    };
    static const std::vector<ParamSpec> quantized{
        {"area", D::area, 1.0},
        {"Cc", D::capacitance, 1e-6, true},
        {"gK_max", D::conductance, 36e-3, true},
        {"Zmin", D::resistance, unset},
        {"Z_init", D::resistance, unset},
        {"n_init", D::dimensionless, unset},
        {"refresh_stride", D::dimensionless, 1.0, false, Kind::integer},
        {"temperature", D::temperature, 0.0},
        {"omega_max", D::angular_frequency, 0.0},
    };
    static const std::vector<ParamSpec> qmem{
        {"C", D::capacitance, 1.0},
        {"L", D::inductance, 1.0},
        {"tau", D::rate, 0.01},
        {"q0", D::charge, 1.0},
        {"gamma_min", D::rate, 0.01},
        {"gamma_max", D::rate, 0.1},
        {"lambda", D::rate, 1.0},
        {"dim", D::dimensionless, 20.0, false, Kind::integer},
        {"alpha0", D::dimensionless, 1.5},
        {"mu_init", D::dimensionless, 0.5},
        {"gain", D::dimensionless, 1.0},
        {"natural_units", D::dimensionless, 1.0, false, Kind::integer},
        {"noise", D::dimensionless, 0.0, false, Kind::integer},
        {"bias_amplitude", D::voltage, 0.0},
        {"bias_omega", D::angular_frequency, 0.0},
        {"positivity_stride", D::dimensionless, 10.0, false, Kind::integer},
    };
    static const std::vector<ParamSpec> two_tl{
        {"Z0", D::resistance, 50.0},
        {"Z1", D::resistance, 50.0},
        {"Cg", D::capacitance, 1e-12},
        {"Cc", D::capacitance, 1e-13},
        {"V0", D::voltage, 0.0},
        {"center", D::angular_frequency, 1e10},
        {"width", D::angular_frequency, 1e8},
        {"peak", D::dimensionless, 1.0},
        {"points", D::dimensionless, 2001.0, false, Kind::integer},
        {"omega_max", D::angular_frequency, 1e12},
    };
    static const std::vector<ParamSpec> sc{
        {"E_C", D::energy, constants::planck * 1e9},
        {"E_L", D::energy, constants::planck * 1e12},
        {"omega10", D::angular_frequency, 0.0},
        {"Delta_gap", D::energy, 0.0},
        {"deltaE", D::energy, 0.0},
        {"alpha_rs", D::dimensionless, 0.15},
        {"C_d", D::capacitance, 5e-13},
        {"T10", D::time, 1e-6},
        {"T_spike", D::time, 5e-3},
        {"Cc", D::capacitance, 1e-13},
        {"G0", D::conductance, 3.045e-9},
        {"omega_mod", D::angular_frequency, 0.0},
        {"modulation", D::dimensionless, 1.0, false, Kind::integer},
        {"samples_per_period", D::dimensionless, 64.0, false, Kind::integer},
        {"threshold", D::dimensionless, 0.1},
    };
    switch (model) {
    case Model::classical: return classical;
    case Model::classical_full: return full;
    case Model::classical_adiabatic: return adiabatic;
    case Model::quantized: return quantized;
    case Model::qmem_sme: return qmem;
    case Model::two_tl: return two_tl;
    case Model::sc_feasibility: return sc;
    }
    return classical;
}

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::vector<std::string>> fixed_keys{
    {"scenario", {"model", "name", "seed"}},
    {"drive", {"I0", "Omega", "waveform", "samples_file"}},
    {"integrator", {"dt", "tolerance", "scheme", "periods", "t_end", "path"}},
    {"outputs", {"csv", "json", "channels"}},
};

[[noreturn]] void fail(int line, const std::string& msg)
{
    throw Error(ErrorKind::parse, line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<Model> model_from(std::string_view s)
{
    static const std::pair<std::string_view, Model> table[] = {
        {"classical", Model::classical},
        {"classical-full", Model::classical_full},
        {"classical-adiabatic", Model::classical_adiabatic},
        {"quantized", Model::quantized},
        {"qmem-sme", Model::qmem_sme},
        {"two-tl", Model::two_tl},
        {"sc-feasibility", Model::sc_feasibility},
    };
    for (const auto& [name, m] : table) {
        if (name == s) {
            return m;
        }
    }
    return std::nullopt;
}

double quantity(const Entry& e, Dimension dim, bool* per_area = nullptr)
{
    try {
        const ParsedQuantity q = parse_quantity(e.value, dim);
        if (q.per_area && per_area == nullptr) {
            fail(e.line, "per-area unit not accepted here");
        }
        if (per_area != nullptr) {
            *per_area = q.per_area;
        }
        return q.value;
    } catch (const Error& err) {
        const std::string msg = err.what();
        if (msg.starts_with("line ")) {
            throw;
        }
        fail(e.line, msg);
    }
}

std::uint64_t parse_seed(const Entry& e)
{
    std::uint64_t v = 0;
    const char* b = e.value.data();
    const char* end = b + e.value.size();
    const auto [ptr, ec] = std::from_chars(b, end, v);
    if (ec != std::errc{} || ptr != end) {
        fail(e.line, "seed must be a non-negative integer, got '" + e.value + "'");
    }
    return v;
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

bool is_drive_model(Model m)
{
    return m == Model::classical || m == Model::classical_full || m == Model::classical_adiabatic ||
           m == Model::quantized;
}

} // namespace

std::string_view to_string(Model model)
{
    switch (model) {
    case Model::classical: return "classical";
    case Model::classical_full: return "classical-full";
    case Model::classical_adiabatic: return "classical-adiabatic";
    case Model::quantized: return "quantized";
    case Model::qmem_sme: return "qmem-sme";
    case Model::two_tl: return "two-tl";
    case Model::sc_feasibility: return "sc-feasibility";
    }
    return "?";
}

std::uint64_t fnv1a(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double ScenarioConfig::param(const std::string& key) const
{
    const auto it = parameters.find(key);
    if (it == parameters.end()) {
        throw Error(ErrorKind::parameter, "parameter '" + key + "' is not defined for model " +
                                              std::string(to_string(model)));
    }
    return it->second.value;
}

bool ScenarioConfig::given(const std::string& key) const
{
    const auto it = parameters.find(key);
    return it != parameters.end() && it->second.line > 0;
}

std::vector<std::pair<std::string, Dimension>> parameter_keys(Model model)
{
    std::vector<std::pair<std::string, Dimension>> out;
    for (const auto& spec : schema(model)) {
        out.emplace_back(spec.key, spec.dim);
    }
    return out;
}

ScenarioConfig parse_scenario(std::string_view text)
{
    std::map<std::string, Section> sections;
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        std::string line = trim(raw);
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = trim(line.substr(0, hash));
        }
        if (line.empty() || line.front() == ';') {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                fail(line_no, "malformed section header '" + line + "'");
            }
            current = trim(std::string_view(line).substr(1, line.size() - 2));
            if (current != "parameters" && !fixed_keys.contains(current)) {
                fail(line_no, "unknown section [" + current + "]");
            }
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(line_no, "expected 'key = value'");
        }
        if (current.empty()) {
            fail(line_no, "key outside of any [section]");
        }
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) {
            fail(line_no, "empty key");
        }
        auto& section = sections[current];
        if (const auto it = section.find(key); it != section.end()) {
            fail(line_no, "duplicate key '" + key + "' in [" + current + "] (first set on line " +
                              std::to_string(it->second.line) + ")");
        }
        section[key] = Entry{value, line_no};
    }

    // Unknown keys in the fixed sections.
    for (const auto& [name, keys] : fixed_keys) {
        const auto s = sections.find(name);
        if (s == sections.end()) {
            continue;
        }
        for (const auto& [key, entry] : s->second) {
            if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
                fail(entry.line, "unknown key '" + key + "' in [" + name + "]");
            }
        }
    }

    ScenarioConfig cfg;
    cfg.source_hash = fnv1a(text);

    const Section& scen = sections["scenario"];
    const auto model_it = scen.find("model");
    if (model_it == scen.end()) {
        fail(0, "missing required key 'model' in [scenario]");
    }
    const auto model = model_from(model_it->second.value);
    if (!model) {
        fail(model_it->second.line, "unknown model '" + model_it->second.value + "'");
    }
    cfg.model = *model;
    if (const auto it = scen.find("name"); it != scen.end()) {
        cfg.name = it->second.value;
    }
    if (const auto it = scen.find("seed"); it != scen.end()) {
        cfg.seed = parse_seed(it->second);
    }

    // [drive]
    const Section& drive = sections["drive"];
    if (const auto it = drive.find("I0"); it != drive.end()) {
        cfg.drive.I0 = quantity(it->second, Dimension::current);
    }
    if (const auto it = drive.find("Omega"); it != drive.end()) {
        cfg.drive.Omega = quantity(it->second, Dimension::angular_frequency);
        if (!(*cfg.drive.Omega >= 0.0)) {
            fail(it->second.line, "Omega must be >= 0");
        }
    }
    if (const auto it = drive.find("waveform"); it != drive.end()) {
        if (it->second.value == "sinusoid") {
            cfg.drive.waveform = Waveform::sinusoid;
        } else if (it->second.value == "sampled") {
            cfg.drive.waveform = Waveform::sampled;
        } else {
            fail(it->second.line, "waveform must be 'sinusoid' or 'sampled'");
        }
    }
    if (const auto it = drive.find("samples_file"); it != drive.end()) {
        cfg.drive.samples_file = it->second.value;
    }
    if (is_drive_model(cfg.model)) {
        if (cfg.drive.waveform == Waveform::sampled) {
            if (cfg.model != Model::classical && cfg.model != Model::classical_full) {
                fail(drive.contains("waveform") ? drive.at("waveform").line : 0,
                     "sampled drives are only supported by the classical and classical-full models");
            }
            if (cfg.drive.samples_file.empty()) {
                fail(0, "missing required key 'samples_file' in [drive] for a sampled waveform");
            }
        } else {
            if (!cfg.drive.I0) {
                fail(0, "missing required key 'I0' in [drive]");
            }
            if (!cfg.drive.Omega) {
                fail(0, "missing required key 'Omega' in [drive]");
            }
        }
    }

    // [integrator]
    const Section& integ = sections["integrator"];
    if (const auto it = integ.find("dt"); it != integ.end()) {
        cfg.integrator.dt = quantity(it->second, Dimension::time);
        if (!(*cfg.integrator.dt > 0.0)) {
            fail(it->second.line, "dt must be positive");
        }
    }
    if (const auto it = integ.find("tolerance"); it != integ.end()) {
        cfg.integrator.tolerance = quantity(it->second, Dimension::dimensionless);
        if (!(cfg.integrator.tolerance > 0.0)) {
            fail(it->second.line, "tolerance must be positive");
        }
    }
    if (const auto it = integ.find("scheme"); it != integ.end()) {
        if (it->second.value == "rk4") {
            cfg.integrator.scheme = hh::Scheme::rk4;
        } else if (it->second.value == "euler") {
            cfg.integrator.scheme = hh::Scheme::euler;
        } else {
            fail(it->second.line, "scheme must be 'rk4' or 'euler'");
        }
    }
    if (const auto it = integ.find("periods"); it != integ.end()) {
        cfg.integrator.periods = quantity(it->second, Dimension::dimensionless);
        if (!(*cfg.integrator.periods > 0.0)) {
            fail(it->second.line, "periods must be positive");
        }
    }
    if (const auto it = integ.find("t_end"); it != integ.end()) {
        cfg.integrator.t_end = quantity(it->second, Dimension::time);
        if (!(*cfg.integrator.t_end > 0.0)) {
            fail(it->second.line, "t_end must be positive");
        }
    }
    if (const auto it = integ.find("path"); it != integ.end()) {
        if (it->second.value != "impedance" && it->second.value != "gate") {
            fail(it->second.line, "path must be 'impedance' or 'gate'");
        }
        cfg.integrator.path = it->second.value;
    }

    // [outputs]
    const Section& outs = sections["outputs"];
    if (const auto it = outs.find("csv"); it != outs.end()) {
        cfg.outputs.csv = it->second.value;
    }
    if (const auto it = outs.find("json"); it != outs.end()) {
        cfg.outputs.json = it->second.value;
    }
    if (const auto it = outs.find("channels"); it != outs.end()) {
        cfg.outputs.channels = split_list(it->second.value);
    }

    // [parameters], strict against the model's schema. `area` first: per-area values scale with it.
    const Section& params = sections["parameters"];
    const auto& specs = schema(cfg.model);
    for (const auto& [key, entry] : params) {
        const bool known = std::any_of(specs.begin(), specs.end(), [&](const ParamSpec& s) { return key == s.key; });
        if (!known) {
            fail(entry.line, "unknown key '" + key + "' in [parameters] for model " + std::string(to_string(cfg.model)));
        }
    }
    double area = 1.0;
    if (const auto it = params.find("area"); it != params.end()) {
        area = quantity(it->second, Dimension::area);
        if (!(area > 0.0)) {
            fail(it->second.line, "area must be positive");
        }
    }
    for (const auto& spec : specs) {
        ParameterValue pv;
        if (const auto it = params.find(spec.key); it != params.end()) {
            bool per_area = false;
            pv.value = quantity(it->second, spec.dim, &per_area);
            if (per_area) {
                if (!spec.per_area) {
                    fail(it->second.line, std::string("'") + spec.key + "' does not accept a per-area unit");
                }
                pv.value *= area;
            }
            if (spec.kind == Kind::integer && (pv.value < 0.0 || pv.value != std::floor(pv.value))) {
                fail(it->second.line, std::string("'") + spec.key + "' must be a non-negative integer");
            }
            pv.line = it->second.line;
        } else {
            pv.value = spec.per_area ? spec.fallback * area : spec.fallback;
        }
        cfg.parameters.emplace(spec.key, pv);
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::io, "cannot read scenario file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_scenario(ss.str());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::parse) {
            throw Error(ErrorKind::parse, path + ": " + e.what());
        }
        throw;
    }
}

} // namespace hhq::io
