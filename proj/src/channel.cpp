#include "qkdlab/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdlab {

void SystemParams::validate() const {
    if (p_detector) {
        const double derived = dark_from_detector(*p_detector);
        if (std::abs(derived - p_dark) > 1e-12) {
            throw std::invalid_argument("SystemParams: p_dark disagrees with p_detector");
        }
    }
}

double overall_eta(const SystemParams& p) {
    return std::pow(10.0, -p.alpha * p.length_km / 10.0) * p.eta_bob;
}

double eta_n(double eta, int n) {
    return 1.0 - std::pow(1.0 - eta, n);
}

YieldError normal_yield_error(const SystemParams& p, int n) {
    const double en = eta_n(overall_eta(p), n);
    const double yield = p.p_dark * (1.0 - en) + en;
    const double qber = (p.p_dark * (1.0 - en) / 2.0 + en * p.e_detector) / yield;
    return {yield, qber};
}

LinkObservables normal_observables(const SystemParams& p) {
    const double mu_eta = p.mu * overall_eta(p);
    const double q = p.p_dark * std::exp(-mu_eta) + 1.0 - std::exp(-mu_eta);
    const double eq = p.p_dark * std::exp(-mu_eta) / 2.0 + (1.0 - std::exp(-mu_eta)) * p.e_detector;
    return {q, eq / q};
}

}  // namespace qkdlab
