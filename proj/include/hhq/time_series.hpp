#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hhq {

struct Channel {
    std::string name;
    std::string unit;
    std::vector<double> values;
};

/// Sampled traces sharing one time axis. Channel 0 is always time ("t", s).
class TimeSeries {
public:
    TimeSeries();

    Channel& add_channel(std::string name, std::string unit);

    /// Appends one sample; `values` follow channel order, time first.
    void push_row(std::initializer_list<double> values);
    void push_row(std::span<const double> values);

    void reserve(std::size_t rows);

    [[nodiscard]] std::size_t size() const noexcept { return channels_.front().values.size(); }
    [[nodiscard]] bool empty() const noexcept { return size() == 0; }

    [[nodiscard]] std::span<const double> time() const noexcept { return channels_.front().values; }
    [[nodiscard]] bool has(std::string_view name) const noexcept;
    [[nodiscard]] std::span<const double> operator[](std::string_view name) const;
    [[nodiscard]] const Channel& channel(std::string_view name) const;

    [[nodiscard]] const std::vector<Channel>& channels() const noexcept { return channels_; }

    /// Free-form run annotations (positivity flags, cutoffs, ...). Ordered for stable output.
    std::map<std::string, std::string> metadata;

private:
    std::vector<Channel> channels_;
};

} // namespace hhq
