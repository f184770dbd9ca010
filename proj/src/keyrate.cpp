#include "qkdlab/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qkdlab/qmath.hpp"

namespace qkdlab {

std::optional<PostProcState> worst_case_bounds(const LinkObservables& obs, double mu) {
    const double p_multi = 1.0 - std::exp(-mu) - mu * std::exp(-mu);
    const double q1 = obs.q_signal - p_multi;
    if (q1 <= 0.0) {
        return std::nullopt;
    }
    PostProcState s;
    s.omega = q1 / obs.q_signal;
    s.e_signal = obs.e_signal;
    s.e1 = obs.e_signal * obs.q_signal / q1;
    s.ep = s.e1;
    s.r_b = 1.0;
    return s;
}

PostProcState bstep(const PostProcState& s) {
    const double den_e1 = s.e1 * s.e1 + (1.0 - s.e1) * (1.0 - s.e1);
    const double den_e = s.e_signal * s.e_signal + (1.0 - s.e_signal) * (1.0 - s.e_signal);
    PostProcState out;
    out.omega = s.omega * s.omega * den_e1 / den_e;
    out.e_signal = s.e_signal * s.e_signal / den_e;
    out.ep = 2.0 * s.ep * (1.0 - s.e1 - s.ep) / den_e1;
    out.e1 = s.e1 * s.e1 / den_e1;
    out.r_b = s.r_b * den_e / 2.0;
    return out;
}

KeyRate gllp_rate(const LinkObservables& obs, const PostProcState& s, double f_ec) {
    const double ep = std::min(std::max(s.ep, 0.0), 1.0);
    const double raw = 0.5 * s.r_b * obs.q_signal *
                       (-f_ec * h2(s.e_signal) + s.omega * (1.0 - h2(ep)));
    return {raw > 0.0 ? raw : 0.0, raw};
}

KeyRate run_post(const LinkObservables& obs, double mu, double f_ec, int n_bsteps) {
    std::optional<PostProcState> s = worst_case_bounds(obs, mu);
    if (!s) {
        return {0.0, -std::numeric_limits<double>::infinity()};
    }
    for (int i = 0; i < n_bsteps; ++i) {
        *s = bstep(*s);
    }
    return gllp_rate(obs, *s, f_ec);
}

}  // namespace qkdlab
