#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hhq/time_series.hpp"

namespace hhq::io {

/// Header `t (s),V (V),...`; values in round-trip scientific notation. An empty `channels`
/// list writes every channel; time is always written first. Unknown channels raise Error(parameter).
void write_csv(const TimeSeries& ts, std::ostream& out, const std::vector<std::string>& channels = {});
void write_csv_file(const TimeSeries& ts, const std::filesystem::path& path,
                    const std::vector<std::string>& channels = {});

/// Inverse of write_csv. Throws Error(parse) on malformed content, Error(io) if unreadable.
TimeSeries read_csv(std::istream& in);
TimeSeries read_csv_file(const std::filesystem::path& path);

/// Two numeric columns (t in s, I in A); an optional non-numeric header line and '#' comments are skipped.
std::pair<std::vector<double>, std::vector<double>> read_drive_samples(const std::filesystem::path& path);

/// "%.16e": 17 significant digits, enough to read back the same double.
std::string format_csv_number(double v);

} // namespace hhq::io
