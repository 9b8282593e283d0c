#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "ww/spectral.hpp"

namespace ww {

struct Tolerances {
    double holo_tol = 1e-8;
    double a1_tol = 1e-9;
    double gauge_tol = 1e-8;
};

// Prognostic state: W = Z - a (periodic part of the interface map) and
// Vbar = conj(Z_t) (conjugate velocity on the surface).
struct InterfaceState {
    PeriodicGrid grid;
    SpectralField W;
    SpectralField Vbar;
    double t = 0.0;

    InterfaceState() = default;
    explicit InterfaceState(const PeriodicGrid& g) : grid(g), W(g), Vbar(g) {}
    InterfaceState(SpectralField w, SpectralField v, double time = 0.0)
        : grid(w.grid()), W(std::move(w)), Vbar(std::move(v)), t(time) {
        require_same_grid(W, Vbar);
    }
};

// Max violation of the holomorphicity constraints on (W, Vbar).
inline double holomorphic_violation(const InterfaceState& s) {
    const SpectralField pa_v = project(s.Vbar, Side::antiholomorphic);
    SpectralField pa_w = project(s.W, Side::antiholomorphic);
    const cplx half_mean_w = 0.5 * mean(s.W);
    for (auto& x : pa_w.samples) x -= half_mean_w;
    return std::max({linf_norm(pa_v), std::abs(mean(s.Vbar)), linf_norm(pa_w)});
}

// Project the state back onto the holomorphic constraint set: Vbar keeps
// only k<0 modes, W keeps k<0 modes plus its mean. Returns the new state
// and the sup-norm of the change (drift diagnostic).
inline std::pair<InterfaceState, double> enforce_holomorphic(const InterfaceState& s) {
    const int n = s.grid.size();
    auto keep_negative = [&](const SpectralField& f, bool keep_mean) {
        std::vector<cplx> d = f.raw_modes();
        for (int i = 0; i < n; ++i) {
            const int k = f.grid().wavenumber(i);
            if (k > 0 || (k == 0 && !keep_mean)) d[static_cast<std::size_t>(i)] = cplx(0, 0);
        }
        return SpectralField::from_raw_modes(f.grid(), std::move(d));
    };
    InterfaceState out(s.grid);
    out.t = s.t;
    out.W = keep_negative(s.W, true);
    out.Vbar = keep_negative(s.Vbar, false);
    const double drift = std::max(linf_norm(out.W - s.W), linf_norm(out.Vbar - s.Vbar));
    return {std::move(out), drift};
}

namespace detail {

inline SpectralField zp_of(const InterfaceState& s) {
    SpectralField zp = spectral_derivative(s.W);
    for (auto& x : zp.samples) x += 1.0;
    return zp;
}

inline SpectralField reciprocal(const SpectralField& f, const char* who) {
    SpectralField r(f.grid());
    for (int j = 0; j < f.size(); ++j) {
        if (std::abs(f[j]) < 1e-12) throw std::runtime_error(std::string(who) + ": vanishing sample");
        r[j] = 1.0 / f[j];
    }
    return r;
}

}  // namespace detail

// A1 = 1 + Im(-[Z_t, H] dZbar_t), the positive weight tying the Taylor
// coefficient to the degeneracy of the interface map.
inline SpectralField compute_a1(const InterfaceState& s, const Tolerances& tol = {}) {
    if (holomorphic_violation(s) > 100.0 * tol.holo_tol)
        throw std::runtime_error("compute_a1: state violates holomorphicity constraints");
    const SpectralField zt = conj(s.Vbar);
    const SpectralField comm = commutator_H(zt, spectral_derivative(s.Vbar));
    SpectralField a1(s.grid);
    for (int j = 0; j < s.grid.size(); ++j) a1[j] = cplx(1.0 - comm[j].imag(), 0.0);
    return a1;
}

// Independent A1 path: 1 + (pi/8) int |Z_t(a) - Z_t(b)|^2 / sin^2 db by
// direct quadrature with the analytic diagonal limit.
inline SpectralField compute_a1_quadrature(const InterfaceState& s) {
    const int n = s.grid.size();
    const double w = s.grid.spacing();
    const SpectralField zt = conj(s.Vbar);
    const SpectralField ztp = spectral_derivative(zt);
    std::vector<double> inv_sin2(static_cast<std::size_t>(n));
    for (int m = 1; m < n; ++m) {
        const double sn = std::sin(0.5 * pi * w * m);
        inv_sin2[static_cast<std::size_t>(m)] = 1.0 / (sn * sn);
    }
    SpectralField a1(s.grid);
    for (int j = 0; j < n; ++j) {
        double acc = (4.0 / (pi * pi)) * std::norm(ztp[j]);
        for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            const int m = j - l >= 0 ? j - l : l - j;
            acc += std::norm(zt[j] - zt[l]) * inv_sin2[static_cast<std::size_t>(m)];
        }
        a1[j] = cplx(1.0 + (pi / 8.0) * acc * w, 0.0);
    }
    return a1;
}

// Zbar_tt = i - i A1 / Z_{,a}; Z_tt its conjugate.
inline std::pair<SpectralField, SpectralField> compute_ztt(const InterfaceState& s,
                                                           const SpectralField& a1) {
    const SpectralField zp = detail::zp_of(s);
    const SpectralField zp_inv = detail::reciprocal(zp, "compute_ztt");
    SpectralField ztt_bar(s.grid);
    const cplx i_unit(0.0, 1.0);
    for (int j = 0; j < s.grid.size(); ++j)
        ztt_bar[j] = i_unit - i_unit * a1[j].real() * zp_inv[j];
    return {conj(ztt_bar), std::move(ztt_bar)};
}

struct BField {
    SpectralField b;
    SpectralField b_prime;
    double removed_mean = 0.0;  // |mean| stripped from b' (gauge diagnostic)
};

// Advection coefficient b = h_t o h^{-1} from its derivative formula,
// integrated spectrally with the gauge b(1) = 0 (corners are fixed).
inline BField compute_b(const InterfaceState& s) {
    const SpectralField zp = detail::zp_of(s);
    const SpectralField zp_inv = detail::reciprocal(zp, "compute_b");
    const SpectralField zt = conj(s.Vbar);
    const SpectralField dvbar = spectral_derivative(s.Vbar);
    const SpectralField dzt = multiply(zp_inv, spectral_derivative(zt));

    SpectralField bp = commutator_H(zt, spectral_derivative(zp_inv)) -
                       commutator_H(conj(zp_inv), dvbar);
    for (int j = 0; j < s.grid.size(); ++j) bp[j] = cplx(2.0 * dzt[j].real() + bp[j].real(), 0.0);

    const double removed = std::abs(mean(bp));
    const cplx m = mean(bp);
    for (auto& x : bp.samples) x -= m;

    SpectralField b = antiderivative(bp);
    const cplx at_one = evaluate(b, 1.0);
    for (auto& x : b.samples) x = cplx((x - at_one).real(), 0.0);
    return {std::move(b), std::move(bp), removed};
}

// Cross-check path: b = Re[(I - H)(Z_t / Z_{,a})] + c, same gauge.
inline SpectralField compute_b_direct(const InterfaceState& s) {
    const SpectralField zp = detail::zp_of(s);
    const SpectralField zp_inv = detail::reciprocal(zp, "compute_b_direct");
    const SpectralField q = multiply(conj(s.Vbar), zp_inv);
    const SpectralField hq = hilbert(q);
    SpectralField b(s.grid);
    for (int j = 0; j < s.grid.size(); ++j) b[j] = cplx((q[j] - hq[j]).real(), 0.0);
    const cplx at_one = evaluate(b, 1.0);
    for (auto& x : b.samples) x = cplx((x - at_one).real(), 0.0);
    return b;
}

// cA_t |Z_{,a}|^2 = -Im(2[Z_t,H] dZbar_tt + 2[Z_tt,H] dZbar_t - [Z_t,Z_t; D_a Zbar_t]).
inline SpectralField compute_At(const InterfaceState& s, const SpectralField& ztt,
                                const SpectralField& ztt_bar, const SpectralField& zp_inv) {
    const SpectralField zt = conj(s.Vbar);
    const SpectralField dvbar = spectral_derivative(s.Vbar);
    const SpectralField d_zt_bar = multiply(zp_inv, dvbar);
    const SpectralField t1 = commutator_H(zt, spectral_derivative(ztt_bar));
    const SpectralField t2 = commutator_H(ztt, dvbar);
    const SpectralField t3 = calderon_bracket(zt, zt, d_zt_bar);
    SpectralField out(s.grid);
    for (int j = 0; j < s.grid.size(); ++j)
        out[j] = cplx(-(2.0 * t1[j] + 2.0 * t2[j] - t3[j]).imag(), 0.0);
    return out;
}

// cA_t / cA = (cA_t |Z_{,a}|^2) / A1.
inline SpectralField compute_at_over_a(const SpectralField& a1, const SpectralField& at_abs2) {
    require_same_grid(a1, at_abs2);
    SpectralField out(a1.grid());
    for (int j = 0; j < a1.size(); ++j) {
        if (a1[j].real() < 0.5)
            throw std::runtime_error("compute_at_over_a: A1 below 1/2 (corrupted state)");
        out[j] = cplx(at_abs2[j].real() / a1[j].real(), 0.0);
    }
    return out;
}

// All instantaneous diagnostic fields.
struct DerivedState {
    SpectralField Zp;
    SpectralField Zp_inv;
    SpectralField A1;
    SpectralField Ztt;
    SpectralField Ztt_bar;
    SpectralField b;
    SpectralField b_prime;
    SpectralField At_abs2;
    SpectralField at_over_a;
    SpectralField taylor;  // -dP/dn = A1 / |Z_{,a}|
    SpectralField calA;    // A1 / |Z_{,a}|^2
    double b_removed_mean = 0.0;
};

inline DerivedState derive(const InterfaceState& s, const Tolerances& tol = {},
                           bool include_at = true) {
    DerivedState d;
    d.Zp = detail::zp_of(s);
    d.Zp_inv = detail::reciprocal(d.Zp, "derive");
    d.A1 = compute_a1(s, tol);
    auto [ztt, ztt_bar] = compute_ztt(s, d.A1);
    d.Ztt = std::move(ztt);
    d.Ztt_bar = std::move(ztt_bar);
    BField bf = compute_b(s);
    d.b = std::move(bf.b);
    d.b_prime = std::move(bf.b_prime);
    d.b_removed_mean = bf.removed_mean;
    if (include_at) {
        d.At_abs2 = compute_At(s, d.Ztt, d.Ztt_bar, d.Zp_inv);
        d.at_over_a = compute_at_over_a(d.A1, d.At_abs2);
    }
    d.taylor = SpectralField(s.grid);
    d.calA = SpectralField(s.grid);
    for (int j = 0; j < s.grid.size(); ++j) {
        const double az = std::abs(d.Zp[j]);
        d.taylor[j] = cplx(d.A1[j].real() / az, 0.0);
        d.calA[j] = cplx(d.A1[j].real() / (az * az), 0.0);
    }
    return d;
}

// The norms of the controlled-quantity report (everything computable in
// flattened coordinates), with D_a = (1/Z_{,a}) d_a.
struct ControlledQuantities {
    double d2_ztt_bar_l2 = 0, d2_ztt_l2 = 0, d2_zt_bar_l2 = 0, d2_zt_l2 = 0;
    double d2_zt_bar_weighted_hhalf = 0;
    double d_ztt_bar_linf = 0, d_zt_bar_linf = 0;
    double ztt_bar_a_l2 = 0, zt_bar_a_l2 = 0;
    double zp_inv_linf = 0, ztt_plus_i_linf = 0, a1_linf = 0;
};

inline ControlledQuantities controlled_quantities(const InterfaceState& s, const DerivedState& d) {
    auto Da = [&](const SpectralField& f) { return multiply(d.Zp_inv, spectral_derivative(f)); };
    const SpectralField one = constant_field(s.grid, cplx(1.0, 0.0));
    const SpectralField d_ztbar = Da(s.Vbar), d2_ztbar = Da(d_ztbar);
    const SpectralField d_zt = Da(conj(s.Vbar)), d2_zt = Da(d_zt);
    const SpectralField d_zttbar = Da(d.Ztt_bar), d2_zttbar = Da(d_zttbar);
    const SpectralField d2_ztt = Da(Da(d.Ztt));
    ControlledQuantities q;
    q.d2_ztt_bar_l2 = weighted_l2_norm(d2_zttbar, one);
    q.d2_ztt_l2 = weighted_l2_norm(d2_ztt, one);
    q.d2_zt_bar_l2 = weighted_l2_norm(d2_ztbar, one);
    q.d2_zt_l2 = weighted_l2_norm(d2_zt, one);
    q.d2_zt_bar_weighted_hhalf = std::sqrt(h_half_norm_sq(multiply(d.Zp_inv, d2_ztbar)));
    q.d_ztt_bar_linf = linf_norm(d_zttbar);
    q.d_zt_bar_linf = linf_norm(d_ztbar);
    q.ztt_bar_a_l2 = weighted_l2_norm(spectral_derivative(d.Ztt_bar), one);
    q.zt_bar_a_l2 = weighted_l2_norm(spectral_derivative(s.Vbar), one);
    q.zp_inv_linf = linf_norm(d.Zp_inv);
    SpectralField ztt_plus_i = d.Ztt;
    for (auto& x : ztt_plus_i.samples) x += cplx(0.0, 1.0);
    q.ztt_plus_i_linf = linf_norm(ztt_plus_i);
    q.a1_linf = linf_norm(d.A1);
    return q;
}

}  // namespace ww
