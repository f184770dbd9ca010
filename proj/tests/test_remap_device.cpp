#include <cmath>

#include "doctest.h"
#include "qkdlab/qmath.hpp"
#include "qkdlab/remap_device.hpp"

using namespace qkdlab;

TEST_CASE("sagnac phase") {
    CHECK(sagnac_phase({1.5, 0.0, 1e8}) == 0.0);

    const double base = sagnac_phase({1.5, 1.0, 1e8});
    CHECK(sagnac_phase({1.5, 1.0, 2e8}) == doctest::Approx(2.0 * base).epsilon(1e-15));
    CHECK(sagnac_phase({3.0, 1.0, 1e8}) == doctest::Approx(2.0 * base).epsilon(1e-15));
    CHECK(sagnac_phase({1.5, 2.0, 1e8}) == doctest::Approx(2.0 * base).epsilon(1e-15));

    // n=1.5, dL=1 m, f=100 MHz lands just above pi.
    CHECK(base == doctest::Approx(2.0 * kPi * 1.5 * 1e8 / 2.99792458e8).epsilon(1e-15));
    CHECK(base / kPi == doctest::Approx(1.0007).epsilon(1e-4));
}

TEST_CASE("plug & play ramp phase") {
    // Pulse past the ramp: full nominal phase.
    CHECK(plugplay_phase({1e-9, kPi / 2.0, 5e-9}) == doctest::Approx(kPi / 2.0));
    // Midpoint: half the nominal phase.
    CHECK(plugplay_phase({1e-9, kPi / 2.0, 0.5e-9}) == doctest::Approx(kPi / 4.0));
    // 1/10 of the ramp.
    CHECK(plugplay_phase({1e-9, kPi / 2.0, 0.1e-9}) == doctest::Approx(kPi / 20.0));
    // Before the ramp: no phase.
    CHECK(plugplay_phase({1e-9, kPi, -1e-9}) == 0.0);
}

TEST_CASE("ramp phase is clamped and monotone") {
    double prev = -1.0;
    for (int i = 0; i <= 40; ++i) {
        const double shift = -0.5e-9 + i * 0.05e-9;
        const double phi = plugplay_phase({1e-9, kPi, shift});
        CHECK(phi >= 0.0);
        CHECK(phi <= kPi);
        CHECK(phi >= prev);
        prev = phi;
    }
}
