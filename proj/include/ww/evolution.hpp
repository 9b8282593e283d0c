#pragma once

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "ww/energy.hpp"
#include "ww/initdata.hpp"
#include "ww/state.hpp"

namespace ww {

struct RunConfig {
    int grid_n = 256;
    double dt = 0.0;  // fixed step when > 0, otherwise the CFL rule below
    double cfl = 0.5;
    double t_end = 1.0;
    int filter_order = 36;
    double filter_strength = 36.841361487904734;  // log(1e16)
    int reproject_every = 1;
    double output_cadence = 0.1;
    ICDescriptor ic;
    double anchor_alpha0 = 0.0;
    std::uint64_t seed = 1;
    Tolerances tol;
};

struct Snapshot {
    int format_version = 1;
    double t = 0.0;
    int grid_n = 0;
    std::vector<cplx> W;
    std::vector<cplx> Vbar;
};

struct EnergyRow {
    EnergyReport e;
    double min_a1 = 0.0;
    double holo_drift = 0.0;
};

struct RunSummary {
    double min_a1 = std::numeric_limits<double>::infinity();
    double max_holo_drift = 0.0;
    long steps = 0;
    double wall_time_s = 0.0;
    double measured_period = std::numeric_limits<double>::quiet_NaN();
    bool completed = false;
    std::string error;
};

struct RunResult {
    std::vector<EnergyRow> series;
    std::vector<Snapshot> snapshots;
    RunSummary summary;
};

namespace detail {

struct FastDerived {
    SpectralField Zp, Zp_inv, A1, Ztt_bar, b;
};

inline FastDerived derive_fast(const InterfaceState& s, const Tolerances& tol) {
    FastDerived d;
    d.Zp = zp_of(s);
    d.Zp_inv = reciprocal(d.Zp, "rhs");
    d.A1 = compute_a1(s, tol);
    d.Ztt_bar = compute_ztt(s, d.A1).second;
    d.b = compute_b(s).b;
    return d;
}

}  // namespace detail

// Frame derivatives of the prognostic pair:
//   dW/dt    = Z_t - b Z_{,a}
//   dVbar/dt = Zbar_tt - b Zbar_{t,a}
inline std::pair<SpectralField, SpectralField> rhs(const InterfaceState& s,
                                                   const Tolerances& tol = {}) {
    const detail::FastDerived d = detail::derive_fast(s, tol);
    const SpectralField dW = conj(s.Vbar) - multiply(d.b, d.Zp);
    const SpectralField dV = d.Ztt_bar - multiply(d.b, spectral_derivative(s.Vbar));
    return {dW, dV};
}

// CFL-limited step size for the transport-dominated dynamics.
inline double cfl_dt(const InterfaceState& s, double cfl, const Tolerances& tol = {}) {
    const detail::FastDerived d = detail::derive_fast(s, tol);
    const double speed = std::max(1.0, linf_norm(d.b) + linf_norm(s.Vbar));
    return cfl * s.grid.spacing() / speed;
}

// One classical RK4 step, then the exponential filter, then (optionally)
// holomorphic reprojection. Returns the reprojection drift when applied.
inline InterfaceState step(const InterfaceState& s, double dt, const RunConfig& cfg,
                           bool reproject = true, double* drift_out = nullptr) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    auto add = [](const InterfaceState& a, double c, const SpectralField& dw,
                  const SpectralField& dv) {
        InterfaceState r(a.grid);
        r.t = a.t;
        r.W = a.W + c * dw;
        r.Vbar = a.Vbar + c * dv;
        return r;
    };
    const auto [k1w, k1v] = rhs(s, cfg.tol);
    const auto [k2w, k2v] = rhs(add(s, 0.5 * dt, k1w, k1v), cfg.tol);
    const auto [k3w, k3v] = rhs(add(s, 0.5 * dt, k2w, k2v), cfg.tol);
    const auto [k4w, k4v] = rhs(add(s, dt, k3w, k3v), cfg.tol);

    InterfaceState out(s.grid);
    out.t = s.t + dt;
    const double c = dt / 6.0;
    out.W = s.W + c * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    out.Vbar = s.Vbar + c * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    out.W = filter(out.W, cfg.filter_order, cfg.filter_strength);
    out.Vbar = filter(out.Vbar, cfg.filter_order, cfg.filter_strength);

    double drift = 0.0;
    if (reproject) {
        auto [proj, dr] = enforce_holomorphic(out);
        out = std::move(proj);
        drift = dr;
    }
    if (!all_finite(out.W) || !all_finite(out.Vbar))
        throw std::runtime_error("step: non-finite samples at t = " + std::to_string(out.t));
    if (drift_out) *drift_out = drift;
    return out;
}

namespace detail {

// Dominant period from upward zero crossings of the mean-removed probe.
inline double dominant_period(const std::vector<double>& t, const std::vector<double>& x) {
    if (x.size() < 4) return std::numeric_limits<double>::quiet_NaN();
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(x.size());
    std::vector<double> crossings;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const double a = x[i - 1] - m, b = x[i] - m;
        if (a < 0.0 && b >= 0.0 && b != a)
            crossings.push_back(t[i - 1] + (t[i] - t[i - 1]) * (-a) / (b - a));
    }
    if (crossings.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    return (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
}

}  // namespace detail

inline RunResult run(const RunConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    const PeriodicGrid g(cfg.grid_n);
    InterfaceState s = make_ic(g, cfg.ic);
    {
        auto [proj, drift] = enforce_holomorphic(s);
        (void)drift;
        s = std::move(proj);
    }

    RunResult out;
    const int probe_index = g.size() / 2;  // alpha = 0
    std::vector<double> probe_t, probe_x;
    double last_drift = 0.0;
    long step_index = 0;

    auto emit = [&](const InterfaceState& st) {
        const DerivedState d = derive(st, cfg.tol);
        EnergyRow row;
        row.e = energy(st, d, cfg.anchor_alpha0);
        double mn = std::numeric_limits<double>::infinity();
        for (const auto& x : d.A1.samples) mn = std::min(mn, x.real());
        row.min_a1 = mn;
        row.holo_drift = last_drift;
        out.series.push_back(row);
        out.summary.min_a1 = std::min(out.summary.min_a1, mn);
        Snapshot snap;
        snap.t = st.t;
        snap.grid_n = g.size();
        snap.W = st.W.samples;
        snap.Vbar = st.Vbar.samples;
        out.snapshots.push_back(std::move(snap));
    };

    try {
        emit(s);
        probe_t.push_back(s.t);
        probe_x.push_back(s.W[probe_index].real());
        double next_tick = cfg.output_cadence > 0.0 ? cfg.output_cadence : cfg.t_end;
        while (s.t < cfg.t_end - 1e-12) {
            double dt = cfg.dt > 0.0 ? cfg.dt : cfl_dt(s, cfg.cfl, cfg.tol);
            const double next_event = std::min(next_tick, cfg.t_end);
            dt = std::min(dt, next_event - s.t);
            const bool reproject = cfg.reproject_every > 0 &&
                                   (step_index + 1) % cfg.reproject_every == 0;
            double drift = 0.0;
            s = step(s, dt, cfg, reproject, &drift);
            ++step_index;
            if (reproject) {
                last_drift = drift;
                out.summary.max_holo_drift = std::max(out.summary.max_holo_drift, drift);
            }
            probe_t.push_back(s.t);
            probe_x.push_back(s.W[probe_index].real());
            if (s.t >= next_tick - 1e-12) {
                emit(s);
                next_tick += cfg.output_cadence > 0.0 ? cfg.output_cadence : cfg.t_end;
            }
        }
        if (out.snapshots.empty() || out.snapshots.back().t < s.t - 1e-12) emit(s);
        out.summary.completed = true;
    } catch (const std::exception& ex) {
        out.summary.completed = false;  // partial series retained for flushing
        out.summary.error = ex.what();
    }
    out.summary.steps = step_index;
    out.summary.measured_period = detail::dominant_period(probe_t, probe_x);
    out.summary.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
}

}  // namespace ww
