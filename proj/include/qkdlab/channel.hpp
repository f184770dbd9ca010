#pragma once

#include <optional>

// Weak-coherent-source QKD link model: fiber loss, threshold detection,
// yields, gains, and normal-operation observables.

namespace qkdlab {

struct SystemParams {
    double alpha = 0.21;        // fiber loss, dB/km
    double length_km = 0.0;
    double eta_bob = 0.08;      // detector efficiency
    double e_detector = 0.0;    // misalignment error probability
    double p_dark = 1e-7;       // system false-detection probability
    double mu = 8e-4;           // mean photon number
    double f_ec = 1.16;         // error-correction inefficiency
    // Per-detector dark probability; when set, p_dark must equal
    // 2 p (1 - p) within 1e-12.
    std::optional<double> p_detector;

    // Throws std::invalid_argument on inconsistent dark-count inputs.
    void validate() const;

    static double dark_from_detector(double p_detector) {
        return 2.0 * p_detector * (1.0 - p_detector);
    }
    static SystemParams table_defaults() { return {}; }
};

struct LinkObservables {
    double q_signal = 0.0;  // overall gain
    double e_signal = 0.0;  // overall QBER
};

// eta = 10^(-alpha l / 10) * eta_Bob
double overall_eta(const SystemParams& p);

// Transmission efficiency of an n-photon signal, 1 - (1 - eta)^n.
double eta_n(double eta, int n);

struct YieldError {
    double yield = 0.0;  // Y_n
    double qber = 0.0;   // e_n
};

// Normal-operation yield and QBER of an n-photon signal.
YieldError normal_yield_error(const SystemParams& p, int n);

// Normal-operation overall gain and QBER (closed form over the Poisson
// photon-number distribution).
LinkObservables normal_observables(const SystemParams& p);

}  // namespace qkdlab
