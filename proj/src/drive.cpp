#include "hhq/drive.hpp"

#include <algorithm>
#include <cmath>

#include "hhq/constants.hpp"
#include "hhq/errors.hpp"

namespace hhq {

Drive Drive::sinusoid(double amplitude, double angular_frequency)
{
    if (!std::isfinite(amplitude) || !std::isfinite(angular_frequency)) {
        throw Error(ErrorKind::parameter, "drive amplitude and frequency must be finite");
    }
    Drive d;
    d.waveform_ = Waveform::sinusoid;
    d.amplitude_ = amplitude;
    d.omega_ = angular_frequency;
    return d;
}

Drive Drive::sampled(std::vector<double> times, std::vector<double> currents)
{
    if (times.size() != currents.size() || times.size() < 2) {
        throw Error(ErrorKind::parameter, "sampled drive needs >= 2 (t, I) pairs of equal length");
    }
    if (!std::is_sorted(times.begin(), times.end())
        || std::adjacent_find(times.begin(), times.end()) != times.end()) {
        throw Error(ErrorKind::parameter, "sampled drive times must be strictly increasing");
    }
    Drive d;
    d.waveform_ = Waveform::sampled;
    d.amplitude_ = 0.0;
    for (double c : currents) {
        d.amplitude_ = std::max(d.amplitude_, std::abs(c));
    }
    d.times_ = std::move(times);
    d.currents_ = std::move(currents);
    return d;
}

double Drive::operator()(double t) const
{
    if (waveform_ == Waveform::sinusoid) {
        return amplitude_ * std::sin(omega_ * t);
    }
    if (t <= times_.front()) {
        return currents_.front();
    }
    if (t >= times_.back()) {
        return currents_.back();
    }
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const auto hi = static_cast<std::size_t>(it - times_.begin());
    const std::size_t lo = hi - 1;
    const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
    return currents_[lo] + w * (currents_[hi] - currents_[lo]);
}

double Drive::period() const
{
    if (waveform_ != Waveform::sinusoid || omega_ == 0.0) {
        throw Error(ErrorKind::parameter, "drive has no period");
    }
    return constants::two_pi / std::abs(omega_);
}

} // namespace hhq
