#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "ww/state.hpp"

namespace ww {

// Deterministic splittable generator (splitmix64); gives identical streams
// on every platform, unlike the distribution adapters in <random>.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    // uniform in [-1, 1)
    double uniform() { return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0; }
};

struct ICDescriptor {
    enum class Kind { flat, mode, random, crest };
    Kind kind = Kind::flat;
    // mode
    int mode_k = -1;
    double eps = 0.0;
    // random
    int max_mode = 16;
    double amplitude = 0.01;
    std::uint64_t seed = 1;
    bool symmetric = false;
    // crest
    double r = 2.5;
    double crest_amp = 1.0;
    bool crest_interior = false;
    double crest_alpha = 0.0;  // crest location when interior
};

// Closed-form angled-crest profile: 1/Z_{,a} = c * base^{1 - 1/r} with
// base(a) = 1 - e^{-i pi (a - a_c)}, which vanishes exactly at the crest
// and has nonnegative real part (principal branch is single-valued).
struct CrestProfile {
    double r;
    double alpha_c;  // crest location (alpha_c = 1 puts it at the corner)
    double c = 1.0;

    CrestProfile(double r_, double alpha_c_, double c_ = 1.0) : r(r_), alpha_c(alpha_c_), c(c_) {
        if (r <= 1.0) throw std::invalid_argument("CrestProfile: r must exceed 1");
    }
    cplx base(double a) const { return 1.0 - std::polar(1.0, -pi * (a - alpha_c)); }
    cplx base_prime(double a) const { return cplx(0.0, pi) * std::polar(1.0, -pi * (a - alpha_c)); }
    cplx base_second(double a) const { return pi * pi * std::polar(1.0, -pi * (a - alpha_c)); }

    cplx zp_inv(double a) const { return c * std::pow(base(a), 1.0 - 1.0 / r); }
    cplx d_zp_inv(double a) const {
        const double p = 1.0 - 1.0 / r;
        return c * p * std::pow(base(a), p - 1.0) * base_prime(a);
    }
    // D_a^2 (1/Z_{,a}) = (1/Z_{,a}) d_a ((1/Z_{,a}) d_a (1/Z_{,a})), closed form.
    cplx d2_zp_inv_weighted(double a) const {
        const double p = 1.0 - 1.0 / r;
        const cplx B = base(a), Bp = base_prime(a), Bpp = base_second(a);
        return c * c * c *
               (p * (2.0 * p - 1.0) * std::pow(B, 3.0 * p - 2.0) * Bp * Bp +
                p * std::pow(B, 3.0 * p - 1.0) * Bpp);
    }
    bool at_crest(double a) const { return std::abs(base(a)) < 1e-13; }
};

namespace detail {

// Truncated binomial series of Z_{,a} = base^{1/r - 1}: coefficients of
// (1 - q)^s with q = e^{-i pi (a - a_c)}, s = 1/r - 1, modes k = -m.
inline SpectralField crest_zp_field(const PeriodicGrid& g, double r, double alpha_c) {
    const int n = g.size();
    const double s = 1.0 / r - 1.0;
    std::vector<cplx> d(static_cast<std::size_t>(n), cplx(0, 0));
    double coef = 1.0;  // C(s, m) (-1)^m, built by recurrence
    for (int m = 0; m < n / 2; ++m) {
        if (m > 0) coef *= -(s - m + 1) / static_cast<double>(m);
        // mode k = -m carries coef * e^{i pi m a_c}; raw index i = (n - m) % n
        // with the (-1)^i phase between raw and true coefficients.
        const int i = (n - m) % n;
        const double phase_sign = (i % 2 == 0) ? 1.0 : -1.0;
        d[static_cast<std::size_t>(i)] = coef * std::polar(1.0, pi * m * alpha_c) * phase_sign;
    }
    return SpectralField::from_raw_modes(g, std::move(d));
}

}  // namespace detail

inline InterfaceState make_ic(const PeriodicGrid& g, const ICDescriptor& d) {
    InterfaceState s(g);
    switch (d.kind) {
        case ICDescriptor::Kind::flat:
            break;
        case ICDescriptor::Kind::mode: {
            if (d.mode_k >= 0) throw std::invalid_argument("make_ic: mode k must be negative");
            for (int j = 0; j < g.size(); ++j)
                s.Vbar[j] = d.eps * std::polar(1.0, pi * d.mode_k * g.point(j));
            break;
        }
        case ICDescriptor::Kind::random: {
            Rng rng(d.seed);
            const int mm = std::min(d.max_mode, g.size() / 2 - 1);
            auto draw = [&](SpectralField& f, bool keep_mean) {
                std::vector<cplx> raw(static_cast<std::size_t>(g.size()), cplx(0, 0));
                if (keep_mean) {
                    const double rho = rng.uniform(), sig = rng.uniform();
                    raw[0] = d.symmetric ? cplx(0.0, d.amplitude * rho)
                                         : d.amplitude * cplx(rho, sig);
                }
                for (int m = 1; m <= mm; ++m) {
                    const double rho = rng.uniform(), sig = rng.uniform();
                    const double decay = d.amplitude / std::pow(1.0 + m, 2.5);
                    const cplx ck = d.symmetric ? cplx(0.0, decay * rho)
                                                : decay * rho * cplx(1.0, sig);
                    const int i = g.size() - m;
                    const double phase_sign = (i % 2 == 0) ? 1.0 : -1.0;
                    raw[static_cast<std::size_t>(i)] = ck * phase_sign;
                }
                f = SpectralField::from_raw_modes(g, std::move(raw));
            };
            draw(s.Vbar, false);
            draw(s.W, true);
            break;
        }
        case ICDescriptor::Kind::crest: {
            if (d.r <= 1.0) throw std::invalid_argument("make_ic: crest exponent r must exceed 1");
            const double alpha_c = d.crest_interior ? d.crest_alpha : 1.0;
            SpectralField zp = detail::crest_zp_field(g, d.r, alpha_c);
            // Normalization Z(1) - Z(-1) = 2, i.e. mean Z_{,a} = 1: the overall
            // amplitude c of 1/Z_{,a} is rescaled to enforce it.
            const cplx m0 = mean(zp);
            if (std::abs(m0) < 1e-12)
                throw std::runtime_error("make_ic: crest normalization did not converge");
            const cplx scale = 1.0 / m0;
            SpectralField zp_minus_1(g);
            for (int j = 0; j < g.size(); ++j) zp_minus_1[j] = scale * zp[j] - 1.0;
            s.W = antiderivative(zp_minus_1);
            break;
        }
    }
    return s;
}

// Random band-limited test field (not holomorphic in general): coefficients
// a_k = rho (1 + i sigma) / (1 + |k|)^{2.5}, |k| <= max_mode.
inline SpectralField random_field(const PeriodicGrid& g, Rng& rng, int max_mode,
                                  double amplitude = 1.0, bool real_valued = false) {
    const int mm = std::min(max_mode, g.size() / 2 - 1);
    std::vector<cplx> raw(static_cast<std::size_t>(g.size()), cplx(0, 0));
    for (int k = -mm; k <= mm; ++k) {
        const double rho = rng.uniform(), sig = rng.uniform();
        const cplx ck = amplitude * rho * cplx(1.0, sig) / std::pow(1.0 + std::abs(k), 2.5);
        const int i = (k + g.size()) % g.size();
        const double phase_sign = (i % 2 == 0) ? 1.0 : -1.0;
        raw[static_cast<std::size_t>(i)] = ck * phase_sign;
    }
    SpectralField f = SpectralField::from_raw_modes(g, std::move(raw));
    if (real_valued)
        for (auto& x : f.samples) x = cplx(x.real(), 0.0);
    return f;
}

// Random small-amplitude state satisfying the holomorphicity constraints.
inline InterfaceState random_holomorphic_state(const PeriodicGrid& g, Rng& rng, int max_mode,
                                               double amplitude) {
    ICDescriptor d;
    d.kind = ICDescriptor::Kind::random;
    d.max_mode = max_mode;
    d.amplitude = amplitude;
    d.seed = rng.next();
    return make_ic(g, d);
}

}  // namespace ww
