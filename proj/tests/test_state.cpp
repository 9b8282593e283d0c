#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "ww/initdata.hpp"
#include "ww/state.hpp"

using namespace ww;

namespace {

InterfaceState mode_state(const PeriodicGrid& g, double eps) {
    ICDescriptor d;
    d.kind = ICDescriptor::Kind::mode;
    d.mode_k = -1;
    d.eps = eps;
    return make_ic(g, d);
}

}  // namespace

TEST_CASE("A1 on canonical states") {
    const PeriodicGrid g(256);

    SECTION("flat rest") {
        const InterfaceState s(g);
        const SpectralField a1 = compute_a1(s);
        CHECK(linf_norm(a1 - constant_field(g, cplx(1.0, 0.0))) <= 1e-12);
    }

    SECTION("single velocity mode: A1 = 1 + pi eps^2, both code paths") {
        const double eps = 0.01;
        const InterfaceState s = mode_state(g, eps);
        const cplx want(1.0 + pi * eps * eps, 0.0);
        const SpectralField a1 = compute_a1(s);
        const SpectralField a1q = compute_a1_quadrature(s);
        CHECK(linf_norm(a1 - constant_field(g, want)) <= 1e-9);
        CHECK(linf_norm(a1q - constant_field(g, want)) <= 1e-9);
        CHECK(linf_norm(a1 - a1q) <= 1e-8);
        CHECK(linf_norm(imag_part(a1)) <= 1e-10);
    }

    SECTION("random holomorphic states: A1 >= 1 and both paths agree") {
        Rng rng(42);
        for (int t = 0; t < 20; ++t) {
            const InterfaceState s = random_holomorphic_state(g, rng, 64, 0.05);
            const SpectralField a1 = compute_a1(s);
            double mn = 1e300;
            for (const auto& x : a1.samples) mn = std::min(mn, x.real());
            CHECK(mn >= 1.0 - 1e-9);
            CHECK(linf_norm(a1 - compute_a1_quadrature(s)) <= 1e-8);
        }
    }

    SECTION("non-holomorphic velocity is rejected") {
        InterfaceState s(g);
        for (int j = 0; j < g.size(); ++j) s.Vbar[j] = std::polar(0.1, pi * g.point(j));
        CHECK_THROWS(compute_a1(s));
    }
}

TEST_CASE("acceleration field") {
    const PeriodicGrid g(256);

    SECTION("flat rest: Z_tt = 0") {
        const InterfaceState s(g);
        auto [ztt, ztt_bar] = compute_ztt(s, compute_a1(s));
        CHECK(linf_norm(ztt) <= 1e-12);
        CHECK(linf_norm(ztt_bar) <= 1e-12);
    }

    SECTION("mode state: Zbar_tt = -i pi eps^2") {
        const double eps = 0.01;
        const InterfaceState s = mode_state(g, eps);
        auto [ztt, ztt_bar] = compute_ztt(s, compute_a1(s));
        (void)ztt;
        CHECK(linf_norm(ztt_bar - constant_field(g, cplx(0.0, -pi * eps * eps))) <= 1e-9);
    }

    SECTION("modulus identity |Zbar_tt - i| |Z_{,a}| = A1") {
        Rng rng(5);
        const InterfaceState s = random_holomorphic_state(g, rng, 64, 0.05);
        const SpectralField a1 = compute_a1(s);
        auto [ztt, ztt_bar] = compute_ztt(s, a1);
        (void)ztt;
        const SpectralField zp = detail::zp_of(s);
        for (int j = 0; j < g.size(); ++j)
            CHECK(std::abs(std::abs(ztt_bar[j] - cplx(0, 1)) * std::abs(zp[j]) - a1[j].real()) <=
                  1e-10);
    }

    SECTION("vanishing Z_{,a} sample is rejected") {
        InterfaceState s(g);
        for (int j = 0; j < g.size(); ++j)
            s.W[j] = cplx(0, 1) / pi * std::polar(1.0, -pi * g.point(j));
        CHECK_THROWS(compute_ztt(s, constant_field(g, cplx(1.0, 0.0))));
    }
}

TEST_CASE("advection coefficient b") {
    const PeriodicGrid g(256);

    SECTION("flat rest: b = 0") {
        const BField bf = compute_b(InterfaceState(g));
        CHECK(linf_norm(bf.b) <= 1e-12);
        CHECK(bf.removed_mean <= 1e-12);
    }

    SECTION("mode state: b = 2 eps (1 + cos pi a)") {
        const double eps = 0.01;
        const InterfaceState s = mode_state(g, eps);
        const BField bf = compute_b(s);
        const SpectralField want =
            sample(g, [&](double a) { return cplx(2.0 * eps * (1.0 + std::cos(pi * a)), 0.0); });
        CHECK(linf_norm(bf.b - want) <= 1e-8);
        CHECK(linf_norm(imag_part(bf.b)) <= 1e-10);
        CHECK(std::abs(evaluate(bf.b, 1.0)) <= 1e-8);  // gauge b(1) = 0
    }

    SECTION("integrated path agrees with the direct projection path") {
        Rng rng(17);
        for (int t = 0; t < 10; ++t) {
            const InterfaceState s = random_holomorphic_state(g, rng, 64, 0.05);
            const BField bf = compute_b(s);
            CHECK(linf_norm(bf.b - compute_b_direct(s)) <= 1e-8);
            CHECK(bf.removed_mean <= 1e-8);
        }
    }
}

TEST_CASE("frame acceleration of the weight") {
    const PeriodicGrid g(256);

    SECTION("flat rest: zero") {
        const InterfaceState s(g);
        const DerivedState d = derive(s);
        CHECK(linf_norm(d.At_abs2) <= 1e-10);
        CHECK(linf_norm(d.at_over_a) <= 1e-10);
    }

    SECTION("mode state: cA_t |Z_{,a}|^2 = 2 pi^2 eps^3 sin(pi a)") {
        const double eps = 0.01;
        const InterfaceState s = mode_state(g, eps);
        const DerivedState d = derive(s);
        const SpectralField want = sample(g, [&](double a) {
            return cplx(2.0 * pi * pi * eps * eps * eps * std::sin(pi * a), 0.0);
        });
        CHECK(linf_norm(d.At_abs2 - want) <= 1e-9);
        CHECK(linf_norm(imag_part(d.At_abs2)) <= 1e-8);
    }

    SECTION("division by corrupted A1 is rejected") {
        CHECK_THROWS(compute_at_over_a(constant_field(g, cplx(0.3, 0.0)),
                                       constant_field(g, cplx(1.0, 0.0))));
        const SpectralField r = compute_at_over_a(constant_field(g, cplx(2.0, 0.0)),
                                                  constant_field(g, cplx(3.0, 0.0)));
        CHECK(linf_norm(r - constant_field(g, cplx(1.5, 0.0))) <= 1e-14);
    }
}

TEST_CASE("holomorphic enforcement") {
    const PeriodicGrid g(128);
    Rng rng(23);
    const InterfaceState s = random_holomorphic_state(g, rng, 32, 0.05);

    SECTION("already-holomorphic states are unchanged") {
        auto [out, drift] = enforce_holomorphic(s);
        CHECK(drift <= 1e-12);
        CHECK(linf_norm(out.W - s.W) <= 1e-12);
    }

    SECTION("positive modes are annihilated") {
        InterfaceState bad(g);
        for (int j = 0; j < g.size(); ++j) {
            bad.Vbar[j] = std::polar(1.0, pi * g.point(j));
            bad.W[j] = std::polar(1.0, pi * g.point(j)) + 3.0;
        }
        auto [out, drift] = enforce_holomorphic(bad);
        CHECK(drift > 0.5);
        CHECK(linf_norm(out.Vbar) <= 1e-12);
        CHECK(linf_norm(out.W - constant_field(g, cplx(3.0, 0.0))) <= 1e-12);
    }
}

TEST_CASE("derived state consistency") {
    const PeriodicGrid g(256);
    Rng rng(31);
    const InterfaceState s = random_holomorphic_state(g, rng, 64, 0.05);
    const DerivedState d = derive(s);
    for (int j = 0; j < g.size(); ++j) {
        CHECK(std::abs(d.Zp[j] * d.Zp_inv[j] - cplx(1.0, 0.0)) <= 1e-10);
        CHECK(d.taylor[j].real() >= -1e-9);
        CHECK(std::abs(d.calA[j].real() * std::norm(d.Zp[j]) - d.A1[j].real()) <= 1e-9);
    }
    CHECK(linf_norm(imag_part(d.b)) <= 1e-10);
}

TEST_CASE("reflection symmetry: even A1, odd b") {
    const PeriodicGrid g(256);
    const int n = g.size();
    ICDescriptor ic;
    ic.kind = ICDescriptor::Kind::random;
    ic.max_mode = 32;
    ic.amplitude = 0.05;
    ic.seed = 77;
    ic.symmetric = true;
    const InterfaceState s = make_ic(g, ic);
    // sanity: W(-a) = -conj W(a) on the sample grid
    for (int j = 1; j < n; ++j)
        REQUIRE(std::abs(s.W[n - j] + std::conj(s.W[j])) <= 1e-12);
    const DerivedState d = derive(s, Tolerances{}, false);
    for (int j = 1; j < n; ++j) {
        CHECK(std::abs(d.A1[n - j].real() - d.A1[j].real()) <= 1e-9);
        CHECK(std::abs(d.b[n - j].real() + d.b[j].real()) <= 1e-9);
    }
}

TEST_CASE("controlled quantity report") {
    const PeriodicGrid g(256);

    SECTION("flat rest") {
        const InterfaceState s(g);
        const ControlledQuantities q = controlled_quantities(s, derive(s));
        CHECK(q.d2_zt_bar_l2 <= 1e-12);
        CHECK(q.zt_bar_a_l2 <= 1e-12);
        CHECK(q.d_ztt_bar_linf <= 1e-12);
        CHECK(q.zp_inv_linf == Catch::Approx(1.0).margin(1e-12));
        CHECK(q.ztt_plus_i_linf == Catch::Approx(1.0).margin(1e-12));
        CHECK(q.a1_linf == Catch::Approx(1.0).margin(1e-12));
    }

    SECTION("mode state norms") {
        const double eps = 0.01;
        const InterfaceState s = mode_state(g, eps);
        const ControlledQuantities q = controlled_quantities(s, derive(s));
        CHECK(q.zt_bar_a_l2 == Catch::Approx(pi * eps * std::sqrt(2.0)).margin(1e-10));
        CHECK(q.d_zt_bar_linf == Catch::Approx(pi * eps).margin(1e-10));
    }
}
