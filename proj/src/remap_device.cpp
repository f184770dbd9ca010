#include "qkdlab/remap_device.hpp"

#include "qkdlab/qmath.hpp"

namespace qkdlab {

double sagnac_phase(const SagnacParams& p) {
    return 2.0 * kPi * p.refractive_index * p.fiber_length_diff * p.aom_freq / kLightSpeed;
}

double plugplay_phase(const ModulatorEdge& e) {
    double frac = e.time_shift / e.rise_time;
    if (frac < 0.0) frac = 0.0;
    if (frac > 1.0) frac = 1.0;
    return e.nominal_phase * frac;
}

}  // namespace qkdlab
