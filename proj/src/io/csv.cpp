#include "hhq/io/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hhq/errors.hpp"

namespace hhq::io {

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        out.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

bool parse_double(std::string_view s, double& v)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

std::pair<std::string, std::string> parse_header_cell(std::string cell, int column)
{
    if (!cell.empty() && cell.back() == '\r') {
        cell.pop_back();
    }
    const auto open = cell.rfind(" (");
    if (open == std::string::npos || cell.back() != ')') {
        throw Error(ErrorKind::parse, "CSV header column " + std::to_string(column) + " is not 'name (unit)': '" +
                                          cell + "'");
    }
    return {cell.substr(0, open), cell.substr(open + 2, cell.size() - open - 3)};
}

} // namespace

std::string format_csv_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

void write_csv(const TimeSeries& ts, std::ostream& out, const std::vector<std::string>& channels)
{
    std::vector<const Channel*> cols;
    cols.push_back(&ts.channels().front());
    if (channels.empty()) {
        for (std::size_t i = 1; i < ts.channels().size(); ++i) {
            cols.push_back(&ts.channels()[i]);
        }
    } else {
        for (const auto& name : channels) {
            if (name == "t") {
                continue;
            }
            if (!ts.has(name)) {
                throw Error(ErrorKind::parameter, "output channel '" + name + "' is not produced by this model");
            }
            cols.push_back(&ts.channel(name));
        }
    }

    std::string line;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        line += (c ? "," : "") + cols[c]->name + " (" + cols[c]->unit + ")";
    }
    out << line << '\n';
    for (std::size_t r = 0; r < ts.size(); ++r) {
        line.clear();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c) {
                line += ',';
            }
            line += format_csv_number(cols[c]->values[r]);
        }
        out << line << '\n';
    }
}

void write_csv_file(const TimeSeries& ts, const std::filesystem::path& path, const std::vector<std::string>& channels)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorKind::io, "cannot write '" + path.string() + "'");
    }
    write_csv(ts, out, channels);
    out.flush();
    if (!out) {
        throw Error(ErrorKind::io, "failed while writing '" + path.string() + "'");
    }
}

TimeSeries read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorKind::parse, "CSV is empty");
    }
    const auto header = split(line);
    if (header.empty()) {
        throw Error(ErrorKind::parse, "CSV header is empty");
    }
    TimeSeries ts;
    const auto [tname, tunit] = parse_header_cell(header[0], 1);
    if (tname != "t") {
        throw Error(ErrorKind::parse, "first CSV column must be time 't'");
    }
    for (std::size_t c = 1; c < header.size(); ++c) {
        auto [name, unit] = parse_header_cell(header[c], static_cast<int>(c + 1));
        ts.add_channel(std::move(name), std::move(unit));
    }

    std::vector<double> row(header.size());
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorKind::parse, "CSV line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(header.size()) + " columns");
        }
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (!parse_double(cells[c], row[c])) {
                throw Error(ErrorKind::parse, "CSV line " + std::to_string(line_no) + ": bad number '" + cells[c] + "'");
            }
        }
        ts.push_row(row);
    }
    return ts;
}

TimeSeries read_csv_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::io, "cannot read '" + path.string() + "'");
    }
    return read_csv(in);
}

std::pair<std::vector<double>, std::vector<double>> read_drive_samples(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::io, "cannot read drive samples '" + path.string() + "'");
    }
    std::vector<double> t, current;
    std::string line;
    int line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.resize(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto cells = split(line);
        double a = 0.0, b = 0.0;
        if (cells.size() != 2 || !parse_double(cells[0], a) || !parse_double(cells[1], b)) {
            if (header_allowed) {
                header_allowed = false;
                continue;  // header
            }
            throw Error(ErrorKind::parse, path.string() + ": line " + std::to_string(line_no) +
                                              ": expected two numbers 't,I'");
        }
        header_allowed = false;
        t.push_back(a);
        current.push_back(b);
    }
    return {std::move(t), std::move(current)};
}

} // namespace hhq::io
