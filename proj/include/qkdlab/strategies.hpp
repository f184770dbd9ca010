#pragma once

#include <optional>

#include "qkdlab/attack.hpp"
#include "qkdlab/channel.hpp"
#include "qkdlab/keyrate.hpp"

// The three coherent-source attack strategies: Eve phase-remaps Alice's
// states, measures, and resends only for outcomes 0 and 3. Every
// positive key rate computed under these observables is insecure: an
// intercept-and-resend attack is an entanglement-breaking channel.

namespace qkdlab {

inline constexpr const char* kSecurityLabel = "INSECURE (entanglement-breaking channel)";

struct StrategyParams {
    double delta = kPi / 2.0;
    double mismatch = 1.0;  // 1 means no efficiency mismatch
    double y0 = 1e-7;       // Eve's substituted dark-count probability
    double gamma = 1.0;     // resend probability for conclusive results
    double mu = 8e-4;
};

// Single-photon attack figures feeding the coherent-source formulas.
struct AttackFigures {
    double e1 = 0.0;
    double c1 = 0.0;
};

// Phase remapping only: fixed resend {|0_z>, |1_x>} on outcomes {0, 3},
// unshifted arrival. Eve sends strong pulses, so Bob's absolute detector
// efficiency drops out.
AttackFigures strategy_one_figures(const SystemParams& p, double delta);
LinkObservables strategy_one(const SystemParams& p, double delta);

// Phase remapping plus time-shifted single-photon resends: the resend
// state is optimized per outcome and the conclusive probability is
// weighted by the absolute detector efficiencies (eta_bob, eta_bob * m).
AttackFigures strategy_two_figures(const SystemParams& p, double delta, double mismatch);
LinkObservables strategy_two(const SystemParams& p, double delta, double mismatch);

// Strategy two with Eve's substituted dark count y0 and resend
// probability gamma, used to mimic normal operation.
LinkObservables strategy_three(const SystemParams& p, const StrategyParams& sp);

struct MatchResult {
    StrategyParams params;
    LinkObservables observables;
    KeyRate rate;
};

// Grid search over (delta, y0, gamma) for parameters whose
// strategy-three observables fall within tol relative error of the
// normal-operation values, preferring the highest key rate. Returns
// nullopt when no grid point matches.
std::optional<MatchResult> match_normal(const SystemParams& p, double mismatch, double tol);

}  // namespace qkdlab
