#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "ww/energy.hpp"
#include "ww/initdata.hpp"

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

TEST_CASE("energy of flat rest") {
    const PeriodicGrid g(256);
    const InterfaceState s(g);
    const EnergyReport e = energy(s, derive(s), 0.0);
    CHECK(e.ea_1 <= 1e-14);
    CHECK(e.ea_23 <= 1e-14);
    CHECK(e.ea_4 <= 1e-14);
    CHECK(e.eb_1 <= 1e-14);
    CHECK(e.eb_2 <= 1e-14);
    CHECK(e.eb_3 <= 1e-14);
    CHECK(e.anchor == Catch::Approx(1.0).margin(1e-12));
    CHECK(e.total == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("energy of a single velocity mode") {
    const PeriodicGrid g(256);
    const double eps = 0.01;
    const InterfaceState s = mode_state(g, eps);
    const EnergyReport e = energy(s, derive(s), 0.0);
    const double pe2 = pi * eps * eps;

    CHECK(e.eb_3 == Catch::Approx(2.0 * pi * pi * eps * eps).epsilon(1e-10));
    CHECK(e.eb_2 == Catch::Approx(2.0 * std::pow(pi, 3) * eps * eps).epsilon(1e-10));
    CHECK(e.anchor == Catch::Approx(1.0 + pe2).margin(1e-10));
    // remaining components from the closed-form fields of this state
    CHECK(e.ea_4 == Catch::Approx(2.0 * std::pow(pi, 4) * eps * eps / (1.0 + pe2)).epsilon(1e-9));
    CHECK(e.ea_23 == Catch::Approx(2.0 * std::pow(pi, 5) * eps * eps).epsilon(1e-9));
    CHECK(e.ea_1 ==
          Catch::Approx(2.0 * std::pow(pi, 6) * std::pow(eps, 4) / (1.0 + pe2)).epsilon(1e-7));
    CHECK(e.eb_1 ==
          Catch::Approx(2.0 * std::pow(pi, 4) * std::pow(eps, 4) / (1.0 + pe2)).epsilon(1e-6));

    SECTION("total is the component sum") {
        CHECK(std::abs(e.total - (e.ea_1 + e.ea_23 + e.ea_4 + e.eb_1 + e.eb_2 + e.eb_3 +
                                  e.anchor)) <= 1e-12);
    }

    SECTION("anchor point must be a grid point") {
        CHECK_THROWS(energy(s, derive(s), 0.1234567));
    }
}

TEST_CASE("half-derivative component agrees across both integral routes") {
    const PeriodicGrid g(128);
    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        const InterfaceState s = random_holomorphic_state(g, rng, 16, 0.05);
        const DerivedState d = derive(s, Tolerances{}, false);
        const SpectralField f =
            multiply(d.Zp_inv, multiply(d.Zp_inv, spectral_derivative(multiply(
                                                      d.Zp_inv, spectral_derivative(s.Vbar)))));
        const double mode_form = h_half_norm_sq(f);
        CHECK(mode_form == Catch::Approx(oracles::h_half_double_integral(f)).margin(1e-8));
        CHECK(mode_form == Catch::Approx(oracles::h_half_holomorphic_route(f)).margin(1e-8));
    }
}

TEST_CASE("A1 sup bound is stable under refinement") {
    auto observed_constant = [](int n) {
        const PeriodicGrid g(n);
        Rng rng(9);
        double c = 0.0;
        for (int t = 0; t < 20; ++t) {
            const InterfaceState s = random_holomorphic_state(g, rng, 32, 0.05);
            const DerivedState d = derive(s, Tolerances{}, false);
            const double zt_a = l2_norm(spectral_derivative(s.Vbar));
            c = std::max(c, linf_norm(d.A1) / (1.0 + zt_a * zt_a));
        }
        return c;
    };
    const double cn = observed_constant(256), c2n = observed_constant(512);
    CHECK(c2n <= 1.5 * cn + 1e-6);
}

TEST_CASE("characterization report") {
    const PeriodicGrid g(256);

    SECTION("flat rest") {
        const InterfaceState s(g);
        const CharacterizationReport c = characterization(s, derive(s));
        CHECK(c.zt_bar_a_l2 <= 1e-12);
        CHECK(c.d2_zt_bar_l2 <= 1e-12);
        CHECK(c.d_zp_inv_l2 <= 1e-12);
        CHECK(c.d2_zp_inv_l2 <= 1e-12);
        CHECK(c.d2_zt_bar_weighted_hhalf <= 1e-12);
        CHECK(c.d_zt_bar_hhalf <= 1e-12);
        CHECK(c.zp_inv_linf == Catch::Approx(1.0).margin(1e-12));
    }

    SECTION("mode state") {
        const double eps = 0.01;
        const InterfaceState s = mode_state(g, eps);
        const CharacterizationReport c = characterization(s, derive(s));
        CHECK(c.zt_bar_a_l2 == Catch::Approx(pi * eps * std::sqrt(2.0)).margin(1e-10));
        CHECK(c.d_zt_bar_hhalf == Catch::Approx(pi * eps * std::sqrt(2.0 * pi)).margin(1e-10));
    }

    SECTION("angled crest at rest: velocity entries vanish, map entries finite") {
        const PeriodicGrid gc(512);
        ICDescriptor ic;
        ic.kind = ICDescriptor::Kind::crest;
        ic.r = 2.5;
        const InterfaceState s = make_ic(gc, ic);
        const CharacterizationReport c = characterization(s, derive(s, Tolerances{}, false));
        CHECK(c.zt_bar_a_l2 <= 1e-12);
        CHECK(c.d2_zt_bar_l2 <= 1e-12);
        CHECK(c.d_zt_bar_hhalf <= 1e-12);
        CHECK(c.d2_zt_bar_weighted_hhalf <= 1e-12);
        CHECK(std::isfinite(c.zp_inv_linf));
        CHECK(std::isfinite(c.d_zp_inv_l2));
    }
}
