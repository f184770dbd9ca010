#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qkdlab/qmath.hpp"

// Intercept-and-resend attack optimizer for phase-remapped ensembles.
// The QBER ratio sum Tr(M_i L_i) / sum Tr(M_i B_i) is minimized exactly:
// each outcome contributes an independent Rayleigh quotient, so the
// global minimum is the smallest eigenvalue of B_i^{-1/2} L_i B_i^{-1/2}
// restricted to the range of B_i, over all outcomes.

namespace qkdlab {

enum class Protocol { bb84, sarg04 };
enum class ResendMode { fixed_resend, optimized_resend };

// The four states Alice emits after Eve remaps her phases to {0, delta,
// 2*delta, 3*delta}.
struct RemappedEnsemble {
    double delta = kPi / 2.0;

    explicit RemappedEnsemble(double d) : delta(d) {}

    PlaneState state(int k) const { return PlaneState(k * delta); }
    // Unnormalized density matrix sum_k |state_k><state_k|.
    SymOp2 density_sum() const;
};

// Relative efficiencies of Bob's two detectors at the arrival time Eve
// chooses for a resent signal. Normal (unshifted) arrival is (1, 1).
struct EfficiencyProfile {
    double eta0 = 1.0;
    double eta1 = 1.0;

    EfficiencyProfile scaled(double s) const { return {eta0 * s, eta1 * s}; }
    EfficiencyProfile swapped() const { return {eta1, eta0}; }
};

// Error operator L and click operator B for one resend outcome.
struct PenaltyPair {
    SymOp2 L;
    SymOp2 B;
};

// What Eve resends when a given outcome fires; outcomes not listed mean
// she sends vacuum.
struct ResendOutcome {
    int outcome = 0;
    PlaneState state;
    EfficiencyProfile profile;
};
using ResendSpec = std::vector<ResendOutcome>;

struct PovmElement {
    std::size_t pair_index = 0;
    Vec2 direction;       // unit measurement direction
    double scale = 1.0;   // M = scale * |direction><direction|
    SymOp2 op() const { return projector(direction) * scale; }
};

struct AttackSolution {
    double qber = 0.0;                 // e_1
    std::vector<PovmElement> povm;     // arg-min outcome(s) only
    double conclusive_prob = 0.0;      // C_1
    double transmittance = 0.0;
};

// Nominal protocol state |phi_k> (delta = pi/2).
PlaneState nominal_state(int k);

// L, B for BB84 sifting: Bob measures in the basis matching
// Alice's nominal state; errors are weighted by the efficiency of the
// wrong-bit detector at Eve's chosen arrival time.
PenaltyPair build_penalty_bb84(const RemappedEnsemble& ens, const PlaneState& resend,
                               const EfficiencyProfile& prof);

// L, B by full enumeration of SARG04 sifting: Alice announces one of the
// two neighbor pairs containing her state, Bob measures Z or X, and a
// conclusive outcome is one orthogonal to exactly one announced state.
PenaltyPair build_penalty_sarg04(const RemappedEnsemble& ens, const PlaneState& resend,
                                 const EfficiencyProfile& prof);

PenaltyPair build_penalty(Protocol proto, const RemappedEnsemble& ens,
                          const PlaneState& resend, const EfficiencyProfile& prof);

std::vector<PenaltyPair> build_pairs(Protocol proto, const RemappedEnsemble& ens,
                                     const ResendSpec& spec);

struct MinQberOptions {
    // Detector misalignment folded into the result as an independent
    // bit flip: e -> e + (1 - 2e) * e_detector.
    double e_detector = 0.0;
    // Ratios within this tolerance of the minimum share the POVM weight.
    double tie_tol = 1e-12;
    // Density operator used for the conclusive probability; defaults to
    // each pair's own B (they agree at the unshifted profile (1, 1)).
    std::optional<SymOp2> density;
};

// Exact minimum of the QBER ratio over all POVMs. The optimal POVM is
// concentrated on the arg-min outcome(s), scaled maximally so that
// sum M_i <= I, with ties split equally.
// Throws std::invalid_argument if no pair has a nonzero B.
AttackSolution min_qber(std::span<const PenaltyPair> pairs, const MinQberOptions& opts = {});

// Maximal conclusive probability of a solution's POVM against the
// remapped ensemble at delta: Tr(sum M_i * density_sum)/4 at the maximal
// feasible scaling.
double transmittance_at(double delta, const AttackSolution& solution);

// QBER of the explicit strategy M_0 = |Psi><Psi| with Psi orthogonal to
// the remapped state 2, all other elements zero.
double suboptimal_qber(double delta);

struct CurvePoint {
    double delta = 0.0;
    double qber = 0.0;
    double conclusive_prob = 0.0;
    double transmittance = 0.0;
};

struct CurveOptions {
    // Resolution of the outer resend-angle grid search; the best point
    // is refined by golden-section search to this width.
    int theta_points = 720;
    double theta_refine_tol = 1e-6;
    double e_detector = 0.0;
};

// Minimum attainable QBER per grid point, with the conclusive
// probability and transmittance of the optimal POVM.
// fixed_resend: the protocol's nominal resend assignment (under
// mismatch, the time-shift template with outcome 3 mirrored).
// optimized_resend: outer search over resend angle and arrival-time
// profile per outcome. Throws std::invalid_argument on an empty grid.
std::vector<CurvePoint> optimal_curve(Protocol proto, ResendMode mode, double mismatch,
                                      std::span<const double> delta_grid,
                                      const CurveOptions& opts = {});

// Best resend state/profile for outcome 0 at one delta (the inner step
// of optimized_resend); outcome 3 is its mirror under theta -> 3pi/2 -
// theta with the profile swapped.
struct OptimizedResend {
    PlaneState state;
    EfficiencyProfile profile;
    double qber = 0.0;
};
OptimizedResend optimize_resend(Protocol proto, const RemappedEnsemble& ens, double mismatch,
                                const CurveOptions& opts = {});

// Fixed resend assignment used by the fixed_resend mode.
ResendSpec fixed_resend_spec(Protocol proto, double mismatch);

// Mirror image of an outcome-0 resend choice for outcome 3.
ResendOutcome mirror_outcome3(const ResendOutcome& outcome0);

}  // namespace qkdlab
