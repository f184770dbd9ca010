#include "qkdlab/strategies.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include "qkdlab/sweep.hpp"

namespace qkdlab {
namespace {

// Gain/QBER formulas shared by all three strategies: dark-count floor plus Eve's
// conclusive resends, with the non-vacuum fraction 1 - e^{-mu}.
LinkObservables eve_observables(double dark, double resend_prob, double e1, double mu) {
    const double vac = std::exp(-mu);
    const double q = dark * vac + (resend_prob + (1.0 - resend_prob) * dark) * (1.0 - vac);
    const double eq = dark * vac / 2.0 +
                      (resend_prob * e1 + (1.0 - resend_prob) * dark / 2.0) * (1.0 - vac);
    return {q, eq / q};
}

AttackFigures figures_from_spec(Protocol proto, double delta, const ResendSpec& spec,
                                const std::vector<EfficiencyProfile>& absolute_profiles,
                                double e_detector) {
    const RemappedEnsemble ens(delta);
    const std::vector<PenaltyPair> pairs = build_pairs(proto, ens, spec);
    MinQberOptions mo;
    mo.e_detector = e_detector;
    const AttackSolution sol = min_qber(pairs, mo);

    // Conclusive probability against the absolute-efficiency click
    // operators, at the maximal scaling with ties split equally.
    SymOp2 total = SymOp2::zero();
    for (const PovmElement& el : sol.povm) total += projector(el.direction);
    const double scale = 1.0 / eig_sym2(total).lambda_max;
    double c1 = 0.0;
    for (const PovmElement& el : sol.povm) {
        const ResendOutcome& o = spec[el.pair_index];
        const PenaltyPair abs_pair =
            build_penalty(proto, ens, o.state, absolute_profiles[el.pair_index]);
        c1 += scale * abs_pair.B.quad(el.direction) / 4.0;
    }
    return {sol.qber, c1};
}

}  // namespace

AttackFigures strategy_one_figures(const SystemParams& p, double delta) {
    const ResendSpec spec = {{0, nominal_state(0), {1.0, 1.0}},
                             {3, nominal_state(3), {1.0, 1.0}}};
    const std::vector<EfficiencyProfile> abs = {{1.0, 1.0}, {1.0, 1.0}};
    return figures_from_spec(Protocol::bb84, delta, spec, abs, p.e_detector);
}

LinkObservables strategy_one(const SystemParams& p, double delta) {
    const AttackFigures f = strategy_one_figures(p, delta);
    return eve_observables(p.p_dark, f.c1, f.e1, p.mu);
}

AttackFigures strategy_two_figures(const SystemParams& p, double delta, double mismatch) {
    const RemappedEnsemble ens(delta);
    const OptimizedResend o = optimize_resend(Protocol::bb84, ens, mismatch, {});
    const ResendOutcome o0{0, o.state, o.profile};
    const ResendSpec spec = {o0, mirror_outcome3(o0)};
    // Eve resends single photons here, so Bob's absolute efficiencies
    // enter the click weights: eta0(t0) = eta1(t1) = eta_bob and
    // eta1(t0) = eta0(t1) = eta_bob * mismatch.
    const std::vector<EfficiencyProfile> abs = {spec[0].profile.scaled(p.eta_bob),
                                                spec[1].profile.scaled(p.eta_bob)};
    return figures_from_spec(Protocol::bb84, delta, spec, abs, p.e_detector);
}

LinkObservables strategy_two(const SystemParams& p, double delta, double mismatch) {
    const AttackFigures f = strategy_two_figures(p, delta, mismatch);
    return eve_observables(p.p_dark, f.c1, f.e1, p.mu);
}

LinkObservables strategy_three(const SystemParams& p, const StrategyParams& sp) {
    const AttackFigures f = strategy_two_figures(p, sp.delta, sp.mismatch);
    return eve_observables(sp.y0, sp.gamma * f.c1, f.e1, sp.mu);
}

std::optional<MatchResult> match_normal(const SystemParams& p, double mismatch, double tol) {
    const LinkObservables normal = normal_observables(p);
    const std::vector<double> deltas = linspace(kPi / 2.0 / 150.0, kPi / 2.0, 150);
    const std::vector<double> y0s = logspace(1e-10, 1e-6, 81);
    const std::vector<double> gammas = linspace(0.0, 1.0, 101);

    // The attack figures are the expensive part; compute them once per
    // delta, fanned across workers.
    std::vector<AttackFigures> figures(deltas.size());
    parallel_for(deltas.size(), [&](std::size_t i) {
        figures[i] = strategy_two_figures(p, deltas[i], mismatch);
    });

    std::optional<MatchResult> best;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        for (double y0 : y0s) {
            for (double gamma : gammas) {
                const double resend = gamma * figures[i].c1;
                const LinkObservables obs =
                    eve_observables(y0, resend, figures[i].e1, p.mu);
                if (std::abs(obs.q_signal / normal.q_signal - 1.0) > tol) continue;
                if (std::abs(obs.e_signal / normal.e_signal - 1.0) > tol) continue;
                const KeyRate r = run_post(obs, p.mu, p.f_ec, 0);
                // Lexicographic tie-break toward smaller (delta, y0, gamma).
                if (!best || r.rate > best->rate.rate) {
                    best = MatchResult{{deltas[i], mismatch, y0, gamma, p.mu}, obs, r};
                }
            }
        }
    }
    return best;
}

}  // namespace qkdlab
