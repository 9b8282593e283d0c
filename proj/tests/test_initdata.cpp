#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ww/initdata.hpp"
#include "ww/state.hpp"

using namespace ww;

TEST_CASE("flat and mode constructors") {
    const PeriodicGrid g(128);
    ICDescriptor d;
    const InterfaceState flat = make_ic(g, d);
    CHECK(linf_norm(flat.W) == 0.0);
    CHECK(linf_norm(flat.Vbar) == 0.0);

    d.kind = ICDescriptor::Kind::mode;
    d.mode_k = -2;
    d.eps = 0.3;
    const InterfaceState m = make_ic(g, d);
    CHECK(std::abs(m.Vbar.mode(-2) - cplx(0.3, 0.0)) <= 1e-12);
    CHECK(holomorphic_violation(m) <= 1e-12);

    d.mode_k = 1;
    CHECK_THROWS(make_ic(g, d));
}

TEST_CASE("every constructor yields a holomorphic state") {
    const PeriodicGrid g(256);
    std::vector<ICDescriptor> descs(4);
    descs[0].kind = ICDescriptor::Kind::flat;
    descs[1].kind = ICDescriptor::Kind::mode;
    descs[1].eps = 0.1;
    descs[2].kind = ICDescriptor::Kind::random;
    descs[2].max_mode = 64;
    descs[2].amplitude = 0.1;
    descs[2].seed = 5;
    descs[3].kind = ICDescriptor::Kind::crest;
    descs[3].r = 2.5;
    for (const auto& d : descs) {
        const InterfaceState s = make_ic(g, d);
        CHECK(holomorphic_violation(s) <= 1e-8);
        auto [proj, drift] = enforce_holomorphic(s);
        (void)proj;
        CHECK(drift <= 1e-8);
    }
}

TEST_CASE("random states are reproducible and symmetric variants reflect") {
    const PeriodicGrid g(128);
    ICDescriptor d;
    d.kind = ICDescriptor::Kind::random;
    d.max_mode = 16;
    d.amplitude = 0.05;
    d.seed = 99;
    const InterfaceState a = make_ic(g, d), b = make_ic(g, d);
    CHECK(linf_norm(a.W - b.W) == 0.0);
    CHECK(linf_norm(a.Vbar - b.Vbar) == 0.0);

    d.symmetric = true;
    const InterfaceState s = make_ic(g, d);
    const int n = g.size();
    for (int j = 1; j < n; ++j) {
        CHECK(std::abs(s.W[n - j] + std::conj(s.W[j])) <= 1e-12);
        CHECK(std::abs(s.Vbar[n - j] + std::conj(s.Vbar[j])) <= 1e-12);
    }
}

TEST_CASE("angled-crest construction") {
    ICDescriptor d;
    d.kind = ICDescriptor::Kind::crest;
    d.r = 2.5;

    SECTION("r <= 1 is rejected") {
        d.r = 1.0;
        CHECK_THROWS(make_ic(PeriodicGrid(128), d));
        CHECK_THROWS(CrestProfile(0.8, 1.0));
    }

    SECTION("normalization: mean Z_{,a} = 1") {
        const PeriodicGrid g(512);
        const InterfaceState s = make_ic(g, d);
        const SpectralField zp = ww::detail::zp_of(s);
        CHECK(std::abs(mean(zp) - cplx(1.0, 0.0)) <= 1e-12);
        CHECK(holomorphic_violation(s) <= 1e-12);
    }

    SECTION("profile vanishes at the corner") {
        const PeriodicGrid g(1024);
        const CrestProfile prof(2.5, 1.0);
        double mx = 0.0;
        for (int j = 0; j < g.size(); ++j) mx = std::max(mx, std::abs(prof.zp_inv(g.point(j))));
        CHECK(std::abs(prof.zp_inv(g.point(0))) <= 1e-3 * mx);  // corner sample (a = -1)
        // the grid realization of 1/Z_{,a} shrinks at the corner under refinement
        double prev = 1e300;
        for (int n : {256, 512, 1024}) {
            ICDescriptor dc = d;
            const InterfaceState s = make_ic(PeriodicGrid(n), dc);
            const DerivedState ds = derive(s, Tolerances{}, false);
            const double corner = std::abs(ds.Zp_inv[0]);
            CHECK(corner < prev);
            prev = corner;
        }
    }

    SECTION("corner slope of log|1/Z_{,a}| is 1 - 1/r") {
        const PeriodicGrid g(1024);
        const CrestProfile prof(2.5, 1.0);
        // least-squares fit over the decade nearest the corner a = 1
        std::vector<double> xs, ys;
        for (int j = 0; j < g.size(); ++j) {
            const double dist = std::abs(g.point(j) - 1.0);
            if (dist >= 0.01 && dist <= 0.1) {
                xs.push_back(std::log(dist));
                ys.push_back(std::log(std::abs(prof.zp_inv(g.point(j)))));
            }
        }
        REQUIRE(xs.size() > 10);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double m = static_cast<double>(xs.size());
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        CHECK(slope == Catch::Approx(1.0 - 1.0 / 2.5).margin(0.05));
    }

    SECTION("interior crest places the zero at the requested point") {
        const CrestProfile prof(3.0, 0.25);
        CHECK(std::abs(prof.zp_inv(0.25)) <= 1e-12);
        CHECK(std::abs(prof.zp_inv(-0.75)) > 0.1);
        ICDescriptor di = d;
        di.crest_interior = true;
        di.crest_alpha = 0.25;
        const InterfaceState s = make_ic(PeriodicGrid(512), di);
        CHECK(holomorphic_violation(s) <= 1e-12);
        // Z_{,a} is largest near the interior crest
        const SpectralField zp = ww::detail::zp_of(s);
        int argmax = 0;
        for (int j = 1; j < 512; ++j)
            if (std::abs(zp[j]) > std::abs(zp[argmax])) argmax = j;
        CHECK(std::abs(PeriodicGrid(512).point(argmax) - 0.25) <= 0.02);
    }
}

TEST_CASE("crest map-derivative norms distinguish r < 2 from r > 2") {
    // ||d_a (1/Z_{,a})||_L2 of the closed-form profile: bounded growth for
    // r = 2.5, sustained growth for r = 1.5
    auto norm1 = [](double r, int n) {
        const PeriodicGrid g(n);
        const CrestProfile prof(r, 1.0);
        double s = 0.0;
        for (int j = 0; j < n; ++j) {
            if (prof.at_crest(g.point(j))) continue;
            s += std::norm(prof.d_zp_inv(g.point(j)));
        }
        return std::sqrt(s * g.spacing());
    };
    const double conv_ratio = norm1(2.5, 1024) / norm1(2.5, 512);
    const double div_ratio = norm1(1.5, 1024) / norm1(1.5, 512);
    CHECK(conv_ratio <= 1.1);
    CHECK(div_ratio > 1.1);
}
