#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ww/grid.hpp"

namespace ww {

enum class Side { holomorphic, antiholomorphic };

namespace detail {

// Apply a diagonal multiplier m(k) in mode space (phase-free: diagonal
// operators look the same on raw DFT indices as on true coefficients).
template <class Mult>
SpectralField apply_multiplier(const SpectralField& f, Mult&& m) {
    const int n = f.size();
    std::vector<cplx> d = f.raw_modes();
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] *= m(f.grid().wavenumber(i));
    return SpectralField::from_raw_modes(f.grid(), std::move(d));
}

// Reject sampled data with a genuine discontinuity across alpha = +-1:
// the wrap-around increment must be commensurate with interior increments.
inline void require_periodic_samples(const SpectralField& f, const char* who) {
    const int n = f.size();
    double interior = 0.0;
    for (int j = 0; j + 1 < n; ++j) interior = std::max(interior, std::abs(f[j + 1] - f[j]));
    const double wrap = std::abs(f[0] - f[n - 1]);
    const double scale = linf_norm(f);
    if (wrap > 50.0 * interior + 1e-10 * scale)
        throw std::invalid_argument(std::string(who) + ": samples jump across the periodic boundary");
}

}  // namespace detail

// Periodic Hilbert transform: multiplier +1 (k<0), 0 (k=0), -1 (k>0)
// in the e^{i pi k a} basis.
inline SpectralField hilbert(const SpectralField& f) {
    return detail::apply_multiplier(f, [](int k) { return k < 0 ? 1.0 : (k > 0 ? -1.0 : 0.0); });
}

inline SpectralField project(const SpectralField& f, Side side) {
    const SpectralField hf = hilbert(f);
    SpectralField r(f.grid());
    const double s = side == Side::holomorphic ? 1.0 : -1.0;
    for (int j = 0; j < f.size(); ++j) r[j] = 0.5 * (f[j] + s * hf[j]);
    return r;
}

inline SpectralField spectral_derivative(const SpectralField& f) {
    return detail::apply_multiplier(f, [](int k) { return cplx(0.0, pi * k); });
}

inline cplx mean(const SpectralField& f) {
    cplx s(0.0, 0.0);
    for (const auto& x : f.samples) s += x;
    return s / static_cast<double>(f.size());
}

// Mean-zero spectral antiderivative: mode k -> mode/(i pi k), k != 0.
inline SpectralField antiderivative(const SpectralField& f) {
    return detail::apply_multiplier(
        f, [](int k) { return k == 0 ? cplx(0.0, 0.0) : 1.0 / cplx(0.0, pi * k); });
}

// Evaluate the band-limited interpolant at an arbitrary point a in [-1, 1].
inline cplx evaluate(const SpectralField& f, double a) {
    const int n = f.size();
    const std::vector<cplx> d = f.raw_modes();
    cplx s(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const int k = f.grid().wavenumber(i);
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;  // (-1)^i converts raw to true coefficient
        s += d[static_cast<std::size_t>(i)] * sign * std::polar(1.0, pi * k * a);
    }
    return s;
}

// Pointwise product, dealiased by zero-padding to 2n.
inline SpectralField multiply(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f, g);
    const int n = f.size();
    std::vector<cplx> df = f.raw_modes(), dg = g.raw_modes();
    std::vector<cplx> pf(static_cast<std::size_t>(2 * n), cplx(0, 0)), pg = pf;
    for (int i = 0; i < n; ++i) {
        const int dst = i < n / 2 ? i : i + n;
        pf[static_cast<std::size_t>(dst)] = df[static_cast<std::size_t>(i)];
        pg[static_cast<std::size_t>(dst)] = dg[static_cast<std::size_t>(i)];
    }
    detail::fft_radix2(pf, +1);
    detail::fft_radix2(pg, +1);
    for (std::size_t j = 0; j < pf.size(); ++j) pf[j] *= pg[j];
    fft_forward(pf);
    const double inv = 1.0 / (2.0 * n);
    std::vector<cplx> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const int src = i < n / 2 ? i : i + n;
        out[static_cast<std::size_t>(i)] = pf[static_cast<std::size_t>(src)] * inv;
    }
    return SpectralField::from_raw_modes(f.grid(), std::move(out));
}

// Squared homogeneous H^{1/2} seminorm: sum_k 2 pi |k| |f_k|^2.
inline double h_half_norm_sq(const SpectralField& f) {
    const std::vector<cplx> d = f.raw_modes();
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i)
        s += 2.0 * pi * std::abs(f.grid().wavenumber(i)) * std::norm(d[static_cast<std::size_t>(i)]);
    return s;
}

// (int |f|^2 w da)^{1/2}; trapezoid quadrature is exact for band-limited
// integrands. The weight must be real and nonnegative.
inline double weighted_l2_norm(const SpectralField& f, const SpectralField& w) {
    require_same_grid(f, w);
    double s = 0.0;
    for (int j = 0; j < f.size(); ++j) {
        if (std::abs(w[j].imag()) > 1e-10 || w[j].real() < -1e-12)
            throw std::invalid_argument("weighted_l2_norm: weight must be real and nonnegative");
        s += std::norm(f[j]) * w[j].real();
    }
    return std::sqrt(std::max(0.0, s * f.grid().spacing()));
}

inline double l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const auto& x : f.samples) s += std::norm(x);
    return std::sqrt(s * f.grid().spacing());
}

// [f, H]g = f Hg - H(fg), products dealiased.
inline SpectralField commutator_H(const SpectralField& f, const SpectralField& g) {
    require_same_grid(f, g);
    return multiply(f, hilbert(g)) - hilbert(multiply(f, g));
}

// [f, g; h](a) = (pi/4i) int Df Dg / sin^2(pi/2 (a-b)) h(b) db, with the
// removable diagonal filled by the limit (4/pi^2) f'(a) g'(a).
inline SpectralField calderon_bracket(const SpectralField& f, const SpectralField& g,
                                      const SpectralField& h) {
    require_same_grid(f, g);
    require_same_grid(f, h);
    detail::require_periodic_samples(f, "calderon_bracket(f)");
    detail::require_periodic_samples(g, "calderon_bracket(g)");
    const int n = f.size();
    const double w = f.grid().spacing();
    const SpectralField fp = spectral_derivative(f), gp = spectral_derivative(g);
    std::vector<double> inv_sin2(static_cast<std::size_t>(n));
    for (int m = 1; m < n; ++m) {
        const double s = std::sin(0.5 * pi * f.grid().spacing() * m);
        inv_sin2[static_cast<std::size_t>(m)] = 1.0 / (s * s);
    }
    SpectralField out(f.grid());
    const cplx pref = pi / cplx(0.0, 4.0);
    for (int j = 0; j < n; ++j) {
        cplx acc = (4.0 / (pi * pi)) * fp[j] * gp[j] * h[j];
        for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            const int m = j - l >= 0 ? j - l : l - j;
            acc += (f[j] - f[l]) * (g[j] - g[l]) * inv_sin2[static_cast<std::size_t>(m)] * h[l];
        }
        out[j] = pref * acc * w;
    }
    return out;
}

// sup_a int |f(a)-f(b)|^2 / sin^2(pi/2 (a-b)) db, diagonal limit (4/pi^2)|f'|^2.
inline double hardy_sup(const SpectralField& f) {
    detail::require_periodic_samples(f, "hardy_sup");
    const int n = f.size();
    const double w = f.grid().spacing();
    const SpectralField fp = spectral_derivative(f);
    std::vector<double> inv_sin2(static_cast<std::size_t>(n));
    for (int m = 1; m < n; ++m) {
        const double s = std::sin(0.5 * pi * w * m);
        inv_sin2[static_cast<std::size_t>(m)] = 1.0 / (s * s);
    }
    double sup = 0.0;
    for (int j = 0; j < n; ++j) {
        double acc = (4.0 / (pi * pi)) * std::norm(fp[j]);
        for (int l = 0; l < n; ++l) {
            if (l == j) continue;
            const int m = j - l >= 0 ? j - l : l - j;
            acc += std::norm(f[j] - f[l]) * inv_sin2[static_cast<std::size_t>(m)];
        }
        sup = std::max(sup, acc * w);
    }
    return sup;
}

// Exponential low-pass filter sigma(k) = exp(-c (|k|/(n/2))^order).
inline SpectralField filter(const SpectralField& f, int order, double strength) {
    const double half = f.size() / 2.0;
    return detail::apply_multiplier(f, [&](int k) {
        return std::exp(-strength * std::pow(std::abs(k) / half, static_cast<double>(order)));
    });
}

}  // namespace ww
