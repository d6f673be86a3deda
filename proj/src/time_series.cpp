#include "hhq/time_series.hpp"

#include <algorithm>

#include "hhq/errors.hpp"

namespace hhq {

TimeSeries::TimeSeries()
{
    channels_.push_back(Channel{"t", "s", {}});
}

Channel& TimeSeries::add_channel(std::string name, std::string unit)
{
    if (has(name)) {
        throw Error(ErrorKind::parameter, "duplicate channel '" + name + "'");
    }
    if (!empty()) {
        throw Error(ErrorKind::parameter, "channels must be declared before samples are added");
    }
    channels_.push_back(Channel{std::move(name), std::move(unit), {}});
    return channels_.back();
}

void TimeSeries::push_row(std::initializer_list<double> values)
{
    push_row(std::span<const double>(values.begin(), values.size()));
}

void TimeSeries::push_row(std::span<const double> values)
{
    if (values.size() != channels_.size()) {
        throw Error(ErrorKind::parameter, "row width does not match channel count");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        channels_[i].values.push_back(values[i]);
    }
}

void TimeSeries::reserve(std::size_t rows)
{
    for (auto& c : channels_) {
        c.values.reserve(rows);
    }
}

bool TimeSeries::has(std::string_view name) const noexcept
{
    return std::any_of(channels_.begin(), channels_.end(), [&](const Channel& c) { return c.name == name; });
}

const Channel& TimeSeries::channel(std::string_view name) const
{
    for (const auto& c : channels_) {
        if (c.name == name) {
            return c;
        }
    }
    throw Error(ErrorKind::parameter, "no channel named '" + std::string(name) + "'");
}

std::span<const double> TimeSeries::operator[](std::string_view name) const
{
    return channel(name).values;
}

} // namespace hhq
