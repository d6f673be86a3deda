#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "hhq/constants.hpp"
#include "hhq/tl/scattering.hpp"

namespace hhq::tl {

/// Coherent amplitude density <a_in(w)> of the source line sampled on a frequency grid.
/// The grid must be strictly increasing and non-negative; the response integrals use the
/// trapezoid rule on it.
struct DriveSpectrum {
    std::vector<double> omega;
    std::vector<cplx> amplitude;

    static DriveSpectrum vacuum(std::vector<double> omega);
    /// a(w) = peak exp(-(w - center)^2 / (2 width^2)) on `points` uniform samples spanning
    /// center +- half_span_widths * width (clipped at w = 0).
    static DriveSpectrum gaussian(double center, double width, cplx peak, std::size_t points,
                                  double half_span_widths = 8.0);

    [[nodiscard]] bool is_vacuum() const noexcept;
    /// Throws Error(quadrature) for an unusable grid (size mismatch, non-finite, non-monotone, negative).
    void validate() const;
};

/// Classical source transform sqrt(w)/(2 pi) int_{t0}^{t1} e^{i w t} I(t) dt by adaptive quadrature.
cplx source_transform(const std::function<double(double)>& current, double omega, double t0, double t1);

struct DualLineResponse {
    double voltage = 0.0;          ///< <dphi_0/dt>, V
    double second_moment = 0.0;    ///< reflection (vacuum) term + coherent correlation term, V^2
    double reflection_term = 0.0;  ///< membrane-line vacuum integral, cut off at omega_max
    double correlation_term = 0.0; ///< normal-ordered source correlations
    /// Commutator part of the source-line correlations, (hbar Z1/4pi) int w |s|^2, cut off at
    /// omega_max. Reported separately; not included in second_moment.
    double source_vacuum_term = 0.0;
    double omega_max = 0.0;
};

struct DualLineVacuum {
    double reflection_term = 0.0;
    double source_vacuum_term = 0.0;
    double omega_max = 0.0;
};

/// The two cut-off vacuum integrals; independent of time and of the source state.
DualLineVacuum dual_line_vacuum(const TLParams& tl, double omega_max, double hbar = constants::hbar);

/// Precomputes the spectral weights so that many time points cost O(grid) each.
class DualLineEvaluator {
public:
    DualLineEvaluator(const DriveSpectrum& spectrum, const TLParams& tl, double omega_max,
                      double hbar = constants::hbar);

    [[nodiscard]] DualLineResponse operator()(double t) const;
    [[nodiscard]] const DualLineVacuum& vacuum() const noexcept { return vacuum_; }

private:
    TLParams tl_;
    double hbar_;
    bool vacuum_state_;
    std::vector<double> omega_;
    std::vector<cplx> voltage_weights_;
    std::vector<cplx> correlation_weights_;
    DualLineVacuum vacuum_;
};

/// Membrane-line voltage moments at time t for the coherent source spectrum. Both vacuum
/// integrals diverge and use the explicit cutoff omega_max. Throws Error(quadrature) when the
/// spectrum is not resolved by its grid (trapezoid on the full and half grids disagree, or
/// the integrand has not decayed at the grid ends).
DualLineResponse dual_line_response(const DriveSpectrum& spectrum, const TLParams& tl, double t, double omega_max,
                                    double hbar = constants::hbar);

} // namespace hhq::tl
