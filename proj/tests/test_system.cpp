#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "twrn/system.hpp"

using namespace twrn;

namespace {

SystemParams defaults() {
    SystemParams p;
    p.ch_a = channel_from_geometry(5, 2.7, 2);
    p.ch_b = channel_from_geometry(5, 2.7, 2);
    p.ch_d = channel_from_geometry(10, 3, 1);
    return p;
}

}  // namespace

TEST_CASE("derived constants at the reference impairment level") {
    SystemParams p = defaults();
    const DerivedConstants c = derive_constants(p);
    CHECK(c.i1 == Catch::Approx(0.470588).epsilon(1e-5));
    CHECK(c.i2 == Catch::Approx(0.0190118).epsilon(1e-5));
    CHECK(c.i3 == Catch::Approx(4.705882).epsilon(1e-5));
    CHECK(c.rcc_threshold == Catch::Approx(12.376).margin(1e-3));
    CHECK(c.relay_cutoff == Catch::Approx(24.752).margin(1e-3));
    CHECK(c.osc_threshold == Catch::Approx(50.0).margin(1e-9));
    CHECK(c.gamma_th == Catch::Approx(7.0).epsilon(1e-14));
    REQUIRE(c.i4.has_value());
    CHECK(*c.i4 == Catch::Approx(1.0 / ((c.i1 - 7.0 * c.i2) * p.rho)).epsilon(1e-14));
}

TEST_CASE("ideal hardware removes the ceilings") {
    SystemParams p = defaults();
    p.k1 = p.k2 = 0;
    const DerivedConstants c = derive_constants(p);
    CHECK(std::isinf(c.osc_threshold));
    CHECK(std::isinf(c.relay_cutoff));
    CHECK(std::isinf(c.rcc_threshold));
    CHECK(c.i2 == 0.0);
    CHECK(sndr_direct(0.01, p) == Catch::Approx(p.rho * 0.01).epsilon(1e-14));
}

TEST_CASE("i4 undefined past the relay cutoff") {
    SystemParams p = defaults();
    p.R_th = 1.6;  // gamma_th ~ 26.9 > 24.75
    CHECK_FALSE(derive_constants(p).i4.has_value());
}

TEST_CASE("ceiling ordering on a parameter grid") {
    for (double k1 : {0.01, 0.05, 0.1, 0.2}) {
        for (double k2 : {0.02, 0.1, 0.3}) {
            SystemParams p = defaults();
            p.k1 = k1;
            p.k2 = k2;
            const DerivedConstants c = derive_constants(p);
            CHECK(c.osc_threshold >= c.relay_cutoff);
            CHECK(c.relay_cutoff >= c.rcc_threshold);
            const double kk = k1 * k1 + k2 * k2;
            CHECK(c.relay_cutoff * kk * (2.0 + kk) == Catch::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("gamma thresholds from rate") {
    SystemParams p = defaults();
    CHECK(p.gamma_th_tdbc() == Catch::Approx(7.0).epsilon(1e-14));
    CHECK(p.gamma_th_two_phase() == Catch::Approx(3.0).epsilon(1e-14));
    p.R_th = 1.5;
    CHECK(p.gamma_th_tdbc() == Catch::Approx(std::exp2(4.5) - 1.0).epsilon(1e-14));
}

TEST_CASE("direct-link SNDR") {
    SystemParams p = defaults();
    CHECK(sndr_direct(0.0, p) == 0.0);
    {
        SystemParams q = defaults();
        q.k1 = q.k2 = 0;
        q.rho = 100;
        CHECK(sndr_direct(0.01, q) == Catch::Approx(1.0).epsilon(1e-14));
    }
    // impairment ceiling
    SystemParams q = defaults();
    q.rho = 1e15;
    CHECK(sndr_direct(1.0, q) == Catch::Approx(50.0).epsilon(1e-6));
    CHECK(sndr_direct(1.0, q) < 50.0);
    // monotone in z and rho
    CHECK(sndr_direct(0.2, p) > sndr_direct(0.1, p));
    SystemParams r = defaults();
    r.rho = 2e5;
    CHECK(sndr_direct(0.1, r) > sndr_direct(0.1, p));
}

TEST_CASE("relay SNDR formulas") {
    SystemParams p = defaults();
    FadingDraw d{0.0, 0.5, 0.0};
    CHECK(sndr_relay_tdbc(d, Terminal::A, p) == 0.0);
    CHECK(sndr_relay_tdbc(d, Terminal::B, p) == 0.0);

    // hand-evaluated point with ideal hardware
    SystemParams q = defaults();
    q.k1 = q.k2 = 0;
    q.rho = 1000;
    FadingDraw e{0.01, 0.01, 0.0};
    const double expect = 0.48 * 1000 * 1e-4 / (4.8 * 0.01 + 1.0);
    CHECK(sndr_relay_tdbc(e, Terminal::A, q) == Catch::Approx(expect).epsilon(1e-12));
    const double mabc = 0.48 * 1000 * 1e-4 / (4.8 * 0.01 / 2 + 1.0);
    CHECK(sndr_relay_mabc(e, Terminal::A, q) == Catch::Approx(mabc).epsilon(1e-12));
    CHECK(sndr_relay_mabc(e, Terminal::A, q) > sndr_relay_tdbc(e, Terminal::A, q));

    // ceiling at x = y as rho grows
    SystemParams h = defaults();
    h.rho = 1e14;
    FadingDraw s{1.0, 1.0, 0.0};
    const DerivedConstants c = derive_constants(h);
    CHECK(sndr_relay_tdbc(s, Terminal::A, h) == Catch::Approx(c.rcc_threshold).epsilon(1e-6));

    // monotone in partner gain for fixed own gain
    FadingDraw lo{0.5, 0.2, 0.0}, hi2{0.5, 0.4, 0.0};
    CHECK(sndr_relay_tdbc(hi2, Terminal::A, p) > sndr_relay_tdbc(lo, Terminal::A, p));
}

TEST_CASE("selection combining") {
    SystemParams p = defaults();
    {
        FadingDraw d{0.0, 0.0, 5.0};
        const auto [ga, gb] = end_to_end_sndrs(d, p);
        CHECK(ga == Catch::Approx(sndr_direct(5.0, p)).epsilon(1e-14));
        CHECK(gb == ga);
    }
    {
        FadingDraw d{0.3, 0.4, 0.0};
        const auto [ga, gb] = end_to_end_sndrs(d, p);
        CHECK(ga == Catch::Approx(sndr_relay_tdbc(d, Terminal::A, p)).epsilon(1e-14));
        CHECK(gb == Catch::Approx(sndr_relay_tdbc(d, Terminal::B, p)).epsilon(1e-14));
    }
    {
        FadingDraw d{0.1, 0.9, 0.02};
        const auto [ga, gb] = end_to_end_sndrs(d, p);
        CHECK(std::min(ga, gb) >= sndr_direct(d.z, p));
    }
}

TEST_CASE("relay power and amplification gain") {
    SystemParams p = defaults();
    p.rho = 1.0;  // P_o = rho * sigma2 = 1
    CHECK(relay_power(FadingDraw{0, 0, 0}, p) == 0.0);
    CHECK(relay_power(FadingDraw{0.01, 0.01, 0}, p) == Catch::Approx(0.0096).epsilon(1e-12));
    const double g1 = relay_power(FadingDraw{0.1, 0.1, 0}, p);
    SystemParams q = p;
    q.beta = 0.4;
    CHECK(relay_power(FadingDraw{0.1, 0.1, 0}, q) == Catch::Approx(g1 * 0.5).epsilon(1e-12));

    // draw-independence of G
    SystemParams r = defaults();
    r.k1 = r.k2 = 0;
    const double expect = std::sqrt(0.48 / 0.2);
    CHECK(amplification_gain(FadingDraw{0.2, 0.3, 0}, r) == Catch::Approx(expect).epsilon(1e-12));
    CHECK(amplification_gain(FadingDraw{5.0, 0.001, 0}, r) ==
          Catch::Approx(amplification_gain(FadingDraw{0.2, 0.3, 0}, r)).epsilon(1e-14));
    CHECK_THROWS_AS(amplification_gain(FadingDraw{0, 0, 0}, r), std::domain_error);
}

TEST_CASE("parameter validation") {
    SystemParams p = defaults();
    p.beta = 1.0;
    CHECK_THROWS_AS(derive_constants(p), std::domain_error);
    p = defaults();
    p.eta = 0.0;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = defaults();
    p.rho = -1;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = defaults();
    p.k1 = -0.1;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
    p = defaults();
    p.quadrature_N = 0;
    CHECK_THROWS_AS(p.validate(), std::domain_error);
}
