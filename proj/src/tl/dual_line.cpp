#include "hhq/tl/dual_line.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hhq/constants.hpp"
#include "hhq/errors.hpp"
#include "hhq/quadrature.hpp"
#include "hhq/simd/kernels.hpp"

namespace hhq::tl {

namespace {

constexpr cplx I{0.0, 1.0};

// Endpoint values above this fraction of the peak mean the grid truncates the spectrum.
constexpr double endpoint_decay = 1e-6;
// Allowed disagreement between the full-grid and every-other-point trapezoid sums.
constexpr double refinement_tol = 1e-3;

std::vector<double> trapezoid_weights(const std::vector<double>& x, std::size_t stride)
{
    std::vector<double> w(x.size(), 0.0);
    for (std::size_t i = 0; i + stride < x.size(); i += stride) {
        const double h = 0.5 * (x[i + stride] - x[i]);
        w[i] += h;
        w[i + stride] += h;
    }
    return w;
}

/// sum_k w_k f_k e^{-i w_k t} with the full grid and, as a resolution check, with every
/// other node (only meaningful when the node count is odd).
struct GridSum {
    cplx full;
    cplx coarse;
    double magnitude;  ///< sum_k w_k |f_k|
};

GridSum grid_sum(const std::vector<double>& omega, const std::vector<cplx>& f, double t)
{
    const std::size_t n = omega.size();
    std::vector<cplx> phase(n);
    for (std::size_t k = 0; k < n; ++k) {
        phase[k] = std::polar(1.0, -omega[k] * t);
    }
    const auto w1 = trapezoid_weights(omega, 1);
    const auto w2 = trapezoid_weights(omega, 2);
    std::vector<cplx> a(n), b(n);
    double magnitude = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = w1[k] * f[k];
        b[k] = w2[k] * f[k];
        magnitude += w1[k] * std::abs(f[k]);
    }
    return {simd::cdot(a, phase), simd::cdot(b, phase), magnitude};
}

void check_resolved(const GridSum& s, const std::vector<cplx>& f, const char* what)
{
    double peak = 0.0;
    for (const cplx& z : f) {
        peak = std::max(peak, std::abs(z));
    }
    if (peak == 0.0) {
        return;
    }
    if (std::abs(f.front()) > endpoint_decay * peak || std::abs(f.back()) > endpoint_decay * peak) {
        throw Error(ErrorKind::quadrature,
                    std::string(what) + ": spectrum has not decayed at the ends of the frequency grid");
    }
    if (f.size() % 2 == 1 && std::abs(s.full - s.coarse) > refinement_tol * s.magnitude) {
        throw Error(ErrorKind::quadrature, std::string(what) + ": spectrum is not resolved by its frequency grid");
    }
}

} // namespace

DriveSpectrum DriveSpectrum::vacuum(std::vector<double> omega)
{
    DriveSpectrum s;
    s.amplitude.assign(omega.size(), 0.0);
    s.omega = std::move(omega);
    return s;
}

DriveSpectrum DriveSpectrum::gaussian(double center, double width, cplx peak, std::size_t points,
                                      double half_span_widths)
{
    if (!(width > 0.0) || points < 3 || !(center >= 0.0)) {
        throw Error(ErrorKind::parameter, "gaussian spectrum needs width > 0, center >= 0, >= 3 points");
    }
    const double lo = std::max(0.0, center - half_span_widths * width);
    const double hi = center + half_span_widths * width;
    DriveSpectrum s;
    s.omega.resize(points);
    s.amplitude.resize(points);
    for (std::size_t k = 0; k < points; ++k) {
        const double w = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
        const double u = (w - center) / width;
        s.omega[k] = w;
        s.amplitude[k] = peak * std::exp(-0.5 * u * u);
    }
    return s;
}

bool DriveSpectrum::is_vacuum() const noexcept
{
    return std::all_of(amplitude.begin(), amplitude.end(), [](const cplx& a) { return a == cplx{}; });
}

void DriveSpectrum::validate() const
{
    if (omega.size() != amplitude.size() || omega.size() < 2) {
        throw Error(ErrorKind::quadrature, "spectrum grid and amplitudes must match and hold >= 2 points");
    }
    for (std::size_t k = 0; k < omega.size(); ++k) {
        if (!std::isfinite(omega[k]) || !std::isfinite(amplitude[k].real()) || !std::isfinite(amplitude[k].imag())) {
            throw Error(ErrorKind::quadrature, "spectrum contains non-finite values");
        }
        if (omega[k] < 0.0 || (k > 0 && !(omega[k] > omega[k - 1]))) {
            throw Error(ErrorKind::quadrature, "spectrum grid must be non-negative and strictly increasing");
        }
    }
}

cplx source_transform(const std::function<double(double)>& current, double omega, double t0, double t1)
{
    if (!(t1 > t0) || !(omega >= 0.0)) {
        throw Error(ErrorKind::parameter, "source transform needs t1 > t0 and omega >= 0");
    }
    quad::Options opts;
    opts.rel_tol = 1e-10;
    opts.abs_tol = 1e-300;
    const double re = quad::integrate([&](double t) { return std::cos(omega * t) * current(t); }, t0, t1, opts).value;
    const double im = quad::integrate([&](double t) { return std::sin(omega * t) * current(t); }, t0, t1, opts).value;
    return std::sqrt(omega) / constants::two_pi * cplx(re, im);
}

DualLineVacuum dual_line_vacuum(const TLParams& tl, double omega_max, double hbar)
{
    tl.validate(true);
    if (!(omega_max > 0.0) || !std::isfinite(omega_max)) {
        throw Error(ErrorKind::parameter, "dual-line vacuum terms need a finite cutoff omega_max > 0");
    }
    const double Cg = tl.Cg, Cc = tl.Cc, Z0 = tl.Z0, Z1 = tl.Z1;

    // Integrate in u = w / wmax so the quadrature sees an O(1) range.
    quad::Options opts;
    opts.rel_tol = 1e-10;
    const double refl = quad::integrate(
                            [&](double u) {
                                const double w = u * omega_max;
                                const double d2 = std::norm(dual_line_denominator(w, Cg, Cc, Z0, Z1));
                                return w * (1.0 + w * w * Cg * Cg * Z0 * Z0) / d2;
                            },
                            0.0, 1.0, opts)
                            .value;
    const double src = quad::integrate(
                           [&](double u) {
                               const double w = u * omega_max;
                               return w * std::norm(dual_line_scattering(w, Cg, Cc, Z0, Z1).s);
                           },
                           0.0, 1.0, opts)
                           .value;

    DualLineVacuum v;
    v.omega_max = omega_max;
    v.reflection_term = hbar * Z1 / constants::pi * omega_max * refl;
    v.source_vacuum_term = hbar * Z1 / (4.0 * constants::pi) * omega_max * src;
    return v;
}

DualLineEvaluator::DualLineEvaluator(const DriveSpectrum& spectrum, const TLParams& tl, double omega_max,
                                     double hbar)
    : tl_(tl), hbar_(hbar), vacuum_state_(spectrum.is_vacuum()), vacuum_(dual_line_vacuum(tl, omega_max, hbar))
{
    spectrum.validate();
    if (vacuum_state_) {
        return;
    }
    const double Cg = tl.Cg, Cc = tl.Cc, Z0 = tl.Z0, Z1 = tl.Z1;
    const std::size_t n = spectrum.omega.size();
    omega_ = spectrum.omega;
    voltage_weights_.resize(n);
    correlation_weights_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = spectrum.omega[k];
        const cplx a = spectrum.amplitude[k];
        // Numerator pieces of the first moment over |D|^2; the positive-frequency half of
        // p (A e + A* e*) + i q (A e - A* e*) is (p + i q) A e^{-iwt}.
        const double p = 1.0 - w * w * Cg * Cc * Z0 * Z1;
        const double q = w * ((Cc + Cg) * Z1 + Cg * Z0);
        const double d2 = 1.0 + w * w * (Cg * Cg * Z0 * Z0 + 2.0 * Cg * Cg * Z0 * Z1 +
                                         ((Cc + Cg) * (Cc + Cg) + w * w * Cg * Cg * Cc * Cc * Z0 * Z0) * Z1 * Z1);
        voltage_weights_[k] = std::pow(w, 1.5) * cplx(p, q) * a / d2;
        correlation_weights_[k] = std::sqrt(w) * a * dual_line_scattering(w, Cg, Cc, Z0, Z1).s;
    }
}

DualLineResponse DualLineEvaluator::operator()(double t) const
{
    DualLineResponse out;
    out.omega_max = vacuum_.omega_max;
    out.reflection_term = vacuum_.reflection_term;
    out.source_vacuum_term = vacuum_.source_vacuum_term;
    if (vacuum_state_) {
        out.second_moment = out.reflection_term;
        return out;
    }
    const GridSum sv = grid_sum(omega_, voltage_weights_, t);
    const GridSum ss = grid_sum(omega_, correlation_weights_, t);
    // The phase e^{-iwt} winds faster as |t| grows, so resolution is checked per time point.
    check_resolved(sv, voltage_weights_, "voltage");
    check_resolved(ss, correlation_weights_, "correlation");
    out.voltage = -tl_.Cg * tl_.Z1 * std::sqrt(hbar_ * tl_.Z0 / constants::pi) * 2.0 * sv.full.real();
    // -(hbar Z1/4pi) (S - S*)^2 with S = int sqrt(w) a s e^{-iwt}: for a coherent source the
    // normal-ordered correlations factorise into this square.
    const cplx diff = ss.full - std::conj(ss.full);
    out.correlation_term = -(hbar_ * tl_.Z1 / (4.0 * constants::pi)) * (diff * diff).real();
    out.second_moment = out.reflection_term + out.correlation_term;
    return out;
}

DualLineResponse dual_line_response(const DriveSpectrum& spectrum, const TLParams& tl, double t, double omega_max,
                                    double hbar)
{
    return DualLineEvaluator(spectrum, tl, omega_max, hbar)(t);
}

} // namespace hhq::tl
