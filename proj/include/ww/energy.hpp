#pragma once

#include <cmath>
#include <stdexcept>

#include "ww/state.hpp"

namespace ww {

// Componentwise energy functional: the three E_a pieces (the half-derivative
// piece combines the second and third terms of the quadratic form), the
// three E_b pieces, and the anchor |Zbar_tt(a0) - i|.
struct EnergyReport {
    double ea_1 = 0, ea_23 = 0, ea_4 = 0;
    double eb_1 = 0, eb_2 = 0, eb_3 = 0;
    double anchor = 0;
    double total = 0;
    double t = 0;
};

struct CharacterizationReport {
    double zt_bar_a_l2 = 0;          // ||Zbar_{t,a}||_L2
    double d2_zt_bar_l2 = 0;         // ||D_a^2 Zbar_t||_L2
    double d_zp_inv_l2 = 0;          // ||d_a (1/Z_{,a})||_L2
    double d2_zp_inv_l2 = 0;         // ||D_a^2 (1/Z_{,a})||_L2
    double d2_zt_bar_weighted_hhalf = 0;  // ||(1/Z_{,a}) D_a^2 Zbar_t||_{H^{1/2}}
    double d_zt_bar_hhalf = 0;       // ||D_a Zbar_t||_{H^{1/2}}
    double zp_inv_linf = 0;          // ||1/Z_{,a}||_inf
};

namespace detail {

inline int grid_index_of(const PeriodicGrid& g, double a0) {
    const double idx = (a0 + 1.0) / g.spacing();
    const int j = static_cast<int>(std::lround(idx));
    if (std::abs(idx - j) > 1e-9 || j < 0 || j >= g.size())
        throw std::invalid_argument("energy: anchor point is not a grid point");
    return j;
}

}  // namespace detail

inline EnergyReport energy(const InterfaceState& s, const DerivedState& d, double alpha0 = 0.0) {
    const int j0 = detail::grid_index_of(s.grid, alpha0);
    auto Da = [&](const SpectralField& f) { return multiply(d.Zp_inv, spectral_derivative(f)); };

    const SpectralField d_ztbar = Da(s.Vbar), d2_ztbar = Da(d_ztbar);
    const SpectralField d_zt = Da(conj(s.Vbar)), d2_zt = Da(d_zt);
    const SpectralField d_zttbar = Da(d.Ztt_bar), d2_zttbar = Da(d_zttbar);

    // Material derivatives eliminated through the commutation relations
    // D_t D_a f = D_a f_t - (D_a z_t) D_a f (and its second-order analogue).
    const SpectralField dt_d_ztbar = d_zttbar - multiply(d_zt, d_ztbar);
    const SpectralField dt_d2_ztbar =
        d2_zttbar - 2.0 * multiply(d_zt, d2_ztbar) - multiply(d2_zt, d_ztbar);

    SpectralField inv_a1(s.grid), zp2_over_a1(s.grid);
    for (int j = 0; j < s.grid.size(); ++j) {
        const double a1 = d.A1[j].real();
        inv_a1[j] = cplx(1.0 / a1, 0.0);
        zp2_over_a1[j] = cplx(std::norm(d.Zp[j]) / a1, 0.0);
    }
    const SpectralField one = constant_field(s.grid, cplx(1.0, 0.0));

    EnergyReport e;
    e.t = s.t;
    const double ea1n = weighted_l2_norm(dt_d2_ztbar, inv_a1);
    e.ea_1 = ea1n * ea1n;
    e.ea_23 = h_half_norm_sq(multiply(d.Zp_inv, d2_ztbar));
    const double ea4n = weighted_l2_norm(d2_ztbar, inv_a1);
    e.ea_4 = ea4n * ea4n;
    const double eb1n = weighted_l2_norm(dt_d_ztbar, zp2_over_a1);
    e.eb_1 = eb1n * eb1n;
    e.eb_2 = h_half_norm_sq(d_ztbar);
    const double eb3n = weighted_l2_norm(spectral_derivative(s.Vbar), one);
    e.eb_3 = eb3n * eb3n;
    e.anchor = std::abs(d.Ztt_bar[j0] - cplx(0.0, 1.0));
    e.total = e.ea_1 + e.ea_23 + e.ea_4 + e.eb_1 + e.eb_2 + e.eb_3 + e.anchor;
    return e;
}

inline CharacterizationReport characterization(const InterfaceState& s, const DerivedState& d) {
    auto Da = [&](const SpectralField& f) { return multiply(d.Zp_inv, spectral_derivative(f)); };
    const SpectralField one = constant_field(s.grid, cplx(1.0, 0.0));
    const SpectralField d_ztbar = Da(s.Vbar), d2_ztbar = Da(d_ztbar);
    CharacterizationReport c;
    c.zt_bar_a_l2 = weighted_l2_norm(spectral_derivative(s.Vbar), one);
    c.d2_zt_bar_l2 = weighted_l2_norm(d2_ztbar, one);
    c.d_zp_inv_l2 = weighted_l2_norm(spectral_derivative(d.Zp_inv), one);
    c.d2_zp_inv_l2 = weighted_l2_norm(Da(Da(d.Zp_inv)), one);
    c.d2_zt_bar_weighted_hhalf = std::sqrt(h_half_norm_sq(multiply(d.Zp_inv, d2_ztbar)));
    c.d_zt_bar_hhalf = std::sqrt(h_half_norm_sq(d_ztbar));
    c.zp_inv_linf = linf_norm(d.Zp_inv);
    return c;
}

}  // namespace ww
