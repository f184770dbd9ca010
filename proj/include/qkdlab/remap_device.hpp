#pragma once

// Formula-level models of how Eve induces a phase step delta in the
// Sagnac and plug & play systems.

namespace qkdlab {

inline constexpr double kLightSpeed = 2.99792458e8;  // m/s

struct SagnacParams {
    double refractive_index = 1.5;    // n >= 1
    double fiber_length_diff = 0.0;   // meters, >= 0
    double aom_freq = 0.0;            // Hz, > 0
};

struct ModulatorEdge {
    double rise_time = 1e-9;     // seconds, > 0
    double nominal_phase = 0.0;  // one of {0, pi/2, pi, 3pi/2}
    double time_shift = 0.0;     // seconds; pulse position relative to ramp start
};

// Phase difference 2*pi*n*dL*f/C between the co- and counter-propagating
// pulses in the Sagnac loop.
double sagnac_phase(const SagnacParams& p);

// Phase applied to a time-shifted pulse: nominal phase scaled by a
// clamped linear ramp rising 0 -> 1 over rise_time. A pulse at the ramp
// midpoint acquires half the nominal phase.
double plugplay_phase(const ModulatorEdge& e);

}  // namespace qkdlab
