#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ww/fft.hpp"

namespace ww {

inline constexpr double pi = 3.14159265358979323846;

// Uniform periodic grid on I = [-1, 1], period 2, points a_j = -1 + 2j/n.
class PeriodicGrid {
public:
    PeriodicGrid() = default;
    explicit PeriodicGrid(int n) : n_(n) {
        if (n < 8 || !detail::is_pow2(static_cast<std::size_t>(n)))
            throw std::invalid_argument("PeriodicGrid: n must be a power of two >= 8");
    }
    int size() const { return n_; }
    double spacing() const { return 2.0 / n_; }
    double point(int j) const { return -1.0 + 2.0 * j / n_; }
    std::vector<double> points() const {
        std::vector<double> p(n_);
        for (int j = 0; j < n_; ++j) p[j] = point(j);
        return p;
    }
    // Signed wavenumber for raw FFT index i (k in -n/2 .. n/2-1).
    int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }
    bool operator==(const PeriodicGrid& o) const { return n_ == o.n_; }
    bool operator!=(const PeriodicGrid& o) const { return n_ != o.n_; }

private:
    int n_ = 0;
};

// Complex-valued periodic function sampled on a PeriodicGrid, with
// mode-space access in the basis e^{i pi k a}, k = -n/2 .. n/2-1.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const PeriodicGrid& g) : grid_(g), samples(g.size(), cplx(0.0, 0.0)) {}
    SpectralField(const PeriodicGrid& g, std::vector<cplx> s) : grid_(g), samples(std::move(s)) {
        if (static_cast<int>(samples.size()) != g.size())
            throw std::invalid_argument("SpectralField: sample count != grid size");
    }

    const PeriodicGrid& grid() const { return grid_; }
    int size() const { return grid_.size(); }
    cplx& operator[](int j) { return samples[static_cast<std::size_t>(j)]; }
    const cplx& operator[](int j) const { return samples[static_cast<std::size_t>(j)]; }

    // Raw DFT coefficients d_i with f_j = sum_i d_i e^{2 pi i ij/n}.
    // d_i equals the true e^{i pi k a} coefficient times (-1)^i.
    std::vector<cplx> raw_modes() const {
        std::vector<cplx> a = samples;
        fft_forward(a);
        const double inv = 1.0 / static_cast<double>(a.size());
        for (auto& x : a) x *= inv;
        return a;
    }

    // Coefficient of e^{i pi k a}, k in [-n/2, n/2).
    cplx mode(int k) const {
        const int n = grid_.size();
        if (k < -n / 2 || k >= n / 2) throw std::out_of_range("SpectralField::mode: k out of range");
        const std::vector<cplx> d = raw_modes();
        const int i = k >= 0 ? k : k + n;
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        return d[static_cast<std::size_t>(i)] * sign;
    }

    static SpectralField from_raw_modes(const PeriodicGrid& g, std::vector<cplx> d) {
        if (static_cast<int>(d.size()) != g.size())
            throw std::invalid_argument("from_raw_modes: length mismatch");
        detail::fft_radix2(d, +1);
        return SpectralField(g, std::move(d));
    }

    std::vector<cplx> samples;

private:
    PeriodicGrid grid_;
};

inline void require_same_grid(const SpectralField& f, const SpectralField& g) {
    if (f.grid() != g.grid()) throw std::invalid_argument("fields live on different grids");
}

inline SpectralField constant_field(const PeriodicGrid& g, cplx c) {
    SpectralField f(g);
    for (auto& x : f.samples) x = c;
    return f;
}

template <class Fn>
SpectralField sample(const PeriodicGrid& g, Fn&& fn) {
    SpectralField f(g);
    for (int j = 0; j < g.size(); ++j) f[j] = fn(g.point(j));
    return f;
}

inline SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a, b);
    SpectralField r(a.grid());
    for (int j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
    return r;
}

inline SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    require_same_grid(a, b);
    SpectralField r(a.grid());
    for (int j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
    return r;
}

inline SpectralField operator*(cplx c, const SpectralField& a) {
    SpectralField r(a.grid());
    for (int j = 0; j < a.size(); ++j) r[j] = c * a[j];
    return r;
}

inline SpectralField conj(const SpectralField& a) {
    SpectralField r(a.grid());
    for (int j = 0; j < a.size(); ++j) r[j] = std::conj(a[j]);
    return r;
}

inline SpectralField real_part(const SpectralField& a) {
    SpectralField r(a.grid());
    for (int j = 0; j < a.size(); ++j) r[j] = cplx(a[j].real(), 0.0);
    return r;
}

inline SpectralField imag_part(const SpectralField& a) {
    SpectralField r(a.grid());
    for (int j = 0; j < a.size(); ++j) r[j] = cplx(a[j].imag(), 0.0);
    return r;
}

inline double linf_norm(const SpectralField& a) {
    double m = 0.0;
    for (const auto& x : a.samples) m = std::max(m, std::abs(x));
    return m;
}

inline bool all_finite(const SpectralField& a) {
    for (const auto& x : a.samples)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

}  // namespace ww
