#include "hhq/qmem/operators.hpp"

#include <cmath>

#include "hhq/errors.hpp"

namespace hhq::qmem {

OscillatorOps build_operators(std::size_t dim, double C, double L, double hbar)
{
    if (dim < 2) {
        throw Error(ErrorKind::parameter, "Fock truncation needs dim >= 2");
    }
    if (!(C > 0.0) || !(L > 0.0) || !(hbar > 0.0)) {
        throw Error(ErrorKind::parameter, "oscillator needs C, L, hbar > 0");
    }

    OscillatorOps ops;
    ops.C = C;
    ops.L = L;
    ops.hbar = hbar;
    ops.omega = 1.0 / std::sqrt(L * C);
    ops.impedance = std::sqrt(L / C);

    const double q_scale = std::sqrt(hbar / (2.0 * ops.impedance));
    const double phi_scale = std::sqrt(hbar * ops.impedance / 2.0);

    ops.q_band.diag.assign(dim, 0.0);
    ops.phi_band.diag.assign(dim, 0.0);
    ops.H_band.diag.resize(dim);
    ops.H_band.lower.assign(dim - 1, 0.0);
    ops.H_band.upper.assign(dim - 1, 0.0);
    for (std::size_t k = 0; k + 1 < dim; ++k) {
        const double s = std::sqrt(static_cast<double>(k + 1));
        ops.q_band.lower.emplace_back(0.0, q_scale * s);
        ops.q_band.upper.emplace_back(0.0, -q_scale * s);
        ops.phi_band.lower.emplace_back(phi_scale * s);
        ops.phi_band.upper.emplace_back(phi_scale * s);
    }
    for (std::size_t k = 0; k < dim; ++k) {
        ops.H_band.diag[k] = hbar * ops.omega * (static_cast<double>(k) + 0.5);
    }

    ops.q = ops.q_band.to_dense();
    ops.phi = ops.phi_band.to_dense();
    ops.H = ops.H_band.to_dense();
    return ops;
}

} // namespace hhq::qmem
