#include <cmath>
#include <random>

#include "doctest.h"
#include "qkdlab/keyrate.hpp"
#include "qkdlab/qmath.hpp"

using namespace qkdlab;

TEST_CASE("worst-case single-photon bounds") {
    // mu -> 0: everything is single-photon.
    const auto tiny = worst_case_bounds({1e-6, 0.05}, 1e-12);
    REQUIRE(tiny.has_value());
    CHECK(tiny->omega == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(tiny->e1 == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(tiny->ep == tiny->e1);
    CHECK(tiny->r_b == 1.0);

    // mu = 8e-4: the multi-photon probability is ~3.198e-7.
    const auto s = worst_case_bounds({1e-6, 0.05}, 8e-4);
    REQUIRE(s.has_value());
    const double p_multi = 1e-6 * (1.0 - s->omega);
    CHECK(std::abs(p_multi - 3.198293845319e-7) < 5e-19);
    CHECK(s->e1 == doctest::Approx(0.05 * 1e-6 / (1e-6 - p_multi)).epsilon(1e-12));

    // Gain at or below the multi-photon floor: no provable bound.
    CHECK(!worst_case_bounds({3e-7, 0.05}, 8e-4).has_value());
}

TEST_CASE("bstep examples") {
    // Error-free: omega squares, r_b halves.
    const PostProcState clean = bstep({0.9, 0.0, 0.0, 0.0, 0.5});
    CHECK(clean.omega == doctest::Approx(0.81).epsilon(1e-15));
    CHECK(clean.e_signal == 0.0);
    CHECK(clean.e1 == 0.0);
    CHECK(clean.ep == 0.0);
    CHECK(clean.r_b == doctest::Approx(0.25).epsilon(1e-15));

    // e1 = ep = 1/2 is a fixed point for e1 and kills the phase error.
    const PostProcState half = bstep({1.0, 0.25, 0.5, 0.5, 1.0});
    CHECK(half.e1 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(half.ep == doctest::Approx(0.0).epsilon(1e-14));

    // All five formulas at (omega, E, e1, ep, r_b) = (0.9, 0.1, 0.1, 0.1, 1).
    const PostProcState s = bstep({0.9, 0.1, 0.1, 0.1, 1.0});
    CHECK(s.omega == doctest::Approx(0.81).epsilon(1e-13));
    CHECK(s.e_signal == doctest::Approx(0.01 / 0.82).epsilon(1e-13));
    CHECK(s.e1 == doctest::Approx(0.01 / 0.82).epsilon(1e-13));
    CHECK(s.ep == doctest::Approx(0.16 / 0.82).epsilon(1e-13));
    CHECK(s.r_b == doctest::Approx(0.41).epsilon(1e-13));
}

TEST_CASE("bstep invariants on reachable states") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uq(1e-6, 1e-3);
    std::uniform_real_distribution<double> ue(0.0, 0.25);
    const double mu = 8e-4;
    for (int t = 0; t < 300; ++t) {
        const LinkObservables obs{uq(rng), ue(rng)};
        const auto s0 = worst_case_bounds(obs, mu);
        REQUIRE(s0.has_value());
        if (s0->e1 > 0.5) continue;  // outside the physical error regime
        PostProcState s = *s0;
        double rb_expect = 1.0;
        for (int k = 1; k <= 4; ++k) {
            const double e_prev = s.e_signal;
            const double den_e = e_prev * e_prev + (1.0 - e_prev) * (1.0 - e_prev);
            rb_expect *= den_e / 2.0;
            s = bstep(s);
            CHECK(s.omega >= 0.0);
            CHECK(s.omega <= 1.0 + 1e-12);
            CHECK(s.e_signal >= 0.0);
            CHECK(s.e_signal <= e_prev + 1e-15);  // parity sifting reduces errors
            CHECK(s.e1 >= 0.0);
            CHECK(s.e1 <= 0.5 + 1e-12);
            CHECK(s.ep >= -1e-12);
            CHECK(s.ep <= 1.0 + 1e-12);
            CHECK(s.r_b == doctest::Approx(rb_expect).epsilon(1e-12));
            CHECK(s.r_b <= std::pow(2.0, -k) + 1e-15);
        }
    }
}

TEST_CASE("gllp rate examples") {
    // Perfect single photons, no errors: R = Q/2.
    const KeyRate perfect = gllp_rate({1e-6, 0.0}, {1.0, 0.0, 0.0, 0.0, 1.0}, 1.0);
    CHECK(perfect.rate == doctest::Approx(5e-7).epsilon(1e-14));
    CHECK(perfect.raw == perfect.rate);

    // With omega = 1, f = 1 and E = e_p the rate crosses zero at 11.0%.
    auto raw_at = [](double e) {
        return gllp_rate({1e-6, e}, {1.0, e, e, e, 1.0}, 1.0).raw;
    };
    CHECK(raw_at(0.1095) > 0.0);
    CHECK(raw_at(0.1105) < 0.0);

    // Negative raw rates are clamped to zero key.
    const KeyRate bad = gllp_rate({1e-6, 0.2}, {1.0, 0.2, 0.2, 0.2, 1.0}, 1.0);
    CHECK(bad.rate == 0.0);
    CHECK(bad.raw < 0.0);
}

TEST_CASE("gllp rate is monotone in the error rates") {
    for (int i = 0; i < 10; ++i) {
        const double e = 0.01 + 0.004 * i;
        const double e_next = e + 0.004;
        const KeyRate a = gllp_rate({1e-6, e}, {0.7, e, e, e, 1.0}, 1.16);
        const KeyRate b = gllp_rate({1e-6, e_next}, {0.7, e_next, e_next, e_next, 1.0}, 1.16);
        CHECK(b.raw <= a.raw + 1e-15);
        // e_p alone
        const KeyRate c = gllp_rate({1e-6, e}, {0.7, e, e, e + 0.01, 1.0}, 1.16);
        CHECK(c.raw <= a.raw + 1e-15);
    }
}

TEST_CASE("run_post") {
    const LinkObservables obs{1e-6, 0.03};
    const double mu = 8e-4;

    // No B steps: composition of the bound and the rate.
    const auto s = worst_case_bounds(obs, mu);
    REQUIRE(s.has_value());
    CHECK(run_post(obs, mu, 1.16, 0).raw == doctest::Approx(gllp_rate(obs, *s, 1.16).raw));

    // Vanishing single-photon bound: zero key, -inf raw.
    const KeyRate none = run_post({3e-7, 0.03}, mu, 1.16, 0);
    CHECK(none.rate == 0.0);
    CHECK(std::isinf(none.raw));
    CHECK(none.raw < 0.0);

    // B steps strictly reduce the retained fraction.
    CHECK(run_post(obs, mu, 1.16, 2).raw != run_post(obs, mu, 1.16, 0).raw);
}
