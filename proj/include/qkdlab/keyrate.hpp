#pragma once

#include <optional>

#include "qkdlab/channel.hpp"

// GLLP key-generation rate with worst-case single-photon bounds and
// two-way B-step post-processing updates.

namespace qkdlab {

struct PostProcState {
    double omega = 1.0;     // single-photon fraction
    double e_signal = 0.0;  // overall QBER
    double e1 = 0.0;        // single-photon bit error rate
    double ep = 0.0;        // single-photon phase error rate
    double r_b = 1.0;       // retained-bit fraction
};

// Worst case: all multi-photon signals are assumed detected and all
// errors attributed to single-photon events. Returns nullopt when
// Q_signal <= p_multi (no provable single-photon contribution).
std::optional<PostProcState> worst_case_bounds(const LinkObservables& obs, double mu);

// One round of two-way parity sifting; all five fields update
// simultaneously from the old values.
PostProcState bstep(const PostProcState& s);

struct KeyRate {
    double rate = 0.0;  // clamped at zero
    double raw = 0.0;   // unclamped, for diagnostics
};

KeyRate gllp_rate(const LinkObservables& obs, const PostProcState& s, double f_ec);

// worst_case_bounds, n_bsteps B steps, then gllp_rate. A vanishing
// single-photon bound reports rate 0 with raw = -infinity.
KeyRate run_post(const LinkObservables& obs, double mu, double f_ec, int n_bsteps);

}  // namespace qkdlab
