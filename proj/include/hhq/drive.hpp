#pragma once

#include <vector>

namespace hhq {

enum class Waveform { sinusoid, sampled };

/// Input current I(t). Sinusoids evaluate exactly to I0 sin(Omega t); sampled drives
/// interpolate linearly and hold their end values outside the sampled range.
class Drive {
public:
    static Drive sinusoid(double amplitude, double angular_frequency);
    static Drive sampled(std::vector<double> times, std::vector<double> currents);

    [[nodiscard]] double operator()(double t) const;

    [[nodiscard]] Waveform waveform() const noexcept { return waveform_; }
    [[nodiscard]] bool is_sinusoid() const noexcept { return waveform_ == Waveform::sinusoid; }
    [[nodiscard]] double amplitude() const noexcept { return amplitude_; }
    [[nodiscard]] double angular_frequency() const noexcept { return omega_; }

    /// 2 pi / Omega; throws for sampled drives or Omega = 0.
    [[nodiscard]] double period() const;

private:
    Drive() = default;

    Waveform waveform_ = Waveform::sinusoid;
    double amplitude_ = 0.0;
    double omega_ = 0.0;
    std::vector<double> times_;
    std::vector<double> currents_;
};

} // namespace hhq
