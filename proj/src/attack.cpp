#include "qkdlab/attack.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qkdlab/sweep.hpp"

namespace qkdlab {
namespace {

// basis (0 = Z, 1 = X) and bit of nominal state j
int basis_of(int j) { return j % 2; }
int bit_of(int j) { return j / 2; }

double fold_detector_error(double e, double e_detector) {
    return e + (1.0 - 2.0 * e) * e_detector;
}

struct RatioSolution {
    double ratio = 0.0;
    Vec2 direction;  // unit measurement direction
    bool valid = false;
};

// Minimum of (w^T L w)/(w^T B w) over the range of B, solved through the
// Rayleigh quotient of B^{-1/2} L B^{-1/2}.
RatioSolution min_ratio(const PenaltyPair& pair) {
    RatioSolution out;
    const EigSym2 eb = eig_sym2(pair.B);
    if (eb.lambda_max <= kPinvCutoff) {
        return out;  // B is zero; outcome never clicks
    }
    if (eb.lambda_min <= kPinvCutoff) {
        // Rank-one B: the quotient is fixed on the range direction.
        const Vec2 u = eb.v_max;
        out.ratio = pair.L.quad(u) / eb.lambda_max;
        out.direction = u;
        out.valid = true;
        return out;
    }
    const SymOp2 s = pinv_sqrt(pair.B);
    // S L S is symmetric since S and L are.
    const double m00 = s.a * pair.L.a + s.b * pair.L.b;
    const double m01 = s.a * pair.L.b + s.b * pair.L.c;
    const double m10 = s.b * pair.L.a + s.c * pair.L.b;
    const double m11 = s.b * pair.L.b + s.c * pair.L.c;
    const SymOp2 a{m00 * s.a + m01 * s.b, m00 * s.b + m01 * s.c, m10 * s.b + m11 * s.c};
    const EigSym2 ea = eig_sym2(a);
    out.ratio = ea.lambda_min;
    out.direction = s.apply(ea.v_min).normalized();
    out.valid = true;
    return out;
}

double golden_section(double lo, double hi, double tol, auto&& f) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - (b - a) * invphi;
    double d = a + (b - a) * invphi;
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * invphi;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * invphi;
            fd = f(d);
        }
    }
    return fc < fd ? c : d;
}

}  // namespace

SymOp2 RemappedEnsemble::density_sum() const {
    SymOp2 sum = SymOp2::zero();
    for (int k = 0; k < 4; ++k) sum += projector(state(k));
    return sum;
}

PlaneState nominal_state(int k) {
    return PlaneState(k * kPi / 2.0);
}

PenaltyPair build_penalty_bb84(const RemappedEnsemble& ens, const PlaneState& resend,
                               const EfficiencyProfile& prof) {
    PenaltyPair out;
    for (int j = 0; j < 4; ++j) {
        const int basis = basis_of(j);
        const PlaneState bit0 = nominal_state(basis);
        const PlaneState bit1 = nominal_state(basis + 2);
        const PlaneState& wrong = bit_of(j) == 0 ? bit1 : bit0;
        const double eta_wrong = bit_of(j) == 0 ? prof.eta1 : prof.eta0;

        const double a0 = PlaneState::overlap(bit0, resend);
        const double a1 = PlaneState::overlap(bit1, resend);
        const double aw = PlaneState::overlap(wrong, resend);

        const SymOp2 p = projector(ens.state(j));
        out.L += p * (eta_wrong * aw * aw);
        out.B += p * (prof.eta0 * a0 * a0 + prof.eta1 * a1 * a1);
    }
    return out;
}

PenaltyPair build_penalty_sarg04(const RemappedEnsemble& ens, const PlaneState& resend,
                                 const EfficiencyProfile& prof) {
    PenaltyPair out;
    for (int j = 0; j < 4; ++j) {
        double w_click = 0.0;
        double w_err = 0.0;
        const std::array<std::array<int, 2>, 2> pairings = {{{(j + 3) % 4, j}, {j, (j + 1) % 4}}};
        for (const auto& announced : pairings) {
            for (int basis = 0; basis < 2; ++basis) {
                for (int bit = 0; bit < 2; ++bit) {
                    const int oidx = basis + 2 * bit;  // outcome as a nominal-state index
                    const double amp = PlaneState::overlap(nominal_state(oidx), resend);
                    const double eta = bit == 0 ? prof.eta0 : prof.eta1;
                    const double p_click = eta * amp * amp;
                    // Outcome is orthogonal to announced state a iff their
                    // nominal indices differ by 2 (mod 4).
                    int inferred = -1;
                    int n_orth = 0;
                    for (int s = 0; s < 2; ++s) {
                        if ((oidx - announced[s] + 4) % 4 == 2) {
                            ++n_orth;
                            inferred = announced[1 - s];
                        }
                    }
                    if (n_orth != 1) continue;  // inconclusive
                    const double w = 0.25 * p_click;  // 1/2 pairing * 1/2 basis
                    w_click += w;
                    if (inferred != j) w_err += w;
                }
            }
        }
        const SymOp2 p = projector(ens.state(j));
        out.L += p * w_err;
        out.B += p * w_click;
    }
    return out;
}

PenaltyPair build_penalty(Protocol proto, const RemappedEnsemble& ens, const PlaneState& resend,
                          const EfficiencyProfile& prof) {
    return proto == Protocol::bb84 ? build_penalty_bb84(ens, resend, prof)
                                   : build_penalty_sarg04(ens, resend, prof);
}

std::vector<PenaltyPair> build_pairs(Protocol proto, const RemappedEnsemble& ens,
                                     const ResendSpec& spec) {
    std::vector<PenaltyPair> pairs;
    pairs.reserve(spec.size());
    for (const ResendOutcome& o : spec) {
        pairs.push_back(build_penalty(proto, ens, o.state, o.profile));
    }
    return pairs;
}

AttackSolution min_qber(std::span<const PenaltyPair> pairs, const MinQberOptions& opts) {
    if (pairs.empty()) {
        throw std::invalid_argument("min_qber: no penalty pairs");
    }
    std::vector<RatioSolution> solved(pairs.size());
    double best = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        solved[i] = min_ratio(pairs[i]);
        if (solved[i].valid && (!any || solved[i].ratio < best)) {
            best = solved[i].ratio;
            any = true;
        }
    }
    if (!any) {
        throw std::invalid_argument("min_qber: all click operators are zero");
    }

    AttackSolution out;
    SymOp2 total = SymOp2::zero();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (solved[i].valid && solved[i].ratio <= best + opts.tie_tol) {
            out.povm.push_back({i, solved[i].direction, 1.0});
            total += projector(solved[i].direction);
        }
    }
    const double scale = 1.0 / eig_sym2(total).lambda_max;
    double conclusive = 0.0;
    for (PovmElement& el : out.povm) {
        el.scale = scale;
        const SymOp2& density = opts.density ? *opts.density : pairs[el.pair_index].B;
        conclusive += scale * density.quad(el.direction) / 4.0;
    }
    out.qber = fold_detector_error(best, opts.e_detector);
    out.conclusive_prob = conclusive;
    out.transmittance = conclusive;
    return out;
}

double transmittance_at(double delta, const AttackSolution& solution) {
    if (solution.povm.empty()) return 0.0;
    const SymOp2 density = RemappedEnsemble(delta).density_sum();
    SymOp2 total = SymOp2::zero();
    for (const PovmElement& el : solution.povm) {
        total += projector(el.direction);
    }
    const double scale = 1.0 / eig_sym2(total).lambda_max;
    double t = 0.0;
    for (const PovmElement& el : solution.povm) {
        t += scale * density.quad(el.direction) / 4.0;
    }
    return t;
}

double suboptimal_qber(double delta) {
    const RemappedEnsemble ens(delta);
    const PenaltyPair pair = build_penalty_bb84(ens, nominal_state(0), {1.0, 1.0});
    const Vec2 psi = PlaneState(2.0 * delta + kPi).amplitudes();  // orthogonal to state 2
    return pair.L.quad(psi) / pair.B.quad(psi);
}

ResendSpec fixed_resend_spec(Protocol proto, double mismatch) {
    if (mismatch >= 1.0) {
        ResendSpec spec;
        for (int i = 0; i < 4; ++i) {
            spec.push_back({i, nominal_state(i), {1.0, 1.0}});
        }
        return spec;
    }
    // Time-shift templates: the outcome-0 resend is shifted so the
    // detector for its own bit keeps full efficiency and the other is
    // suppressed to the mismatch; outcome 3 is the mirror image.
    const int k0 = proto == Protocol::bb84 ? 3 : 1;  // |1_x> for BB84, |0_x> for SARG04
    const ResendOutcome o0{0, nominal_state(k0), {1.0, mismatch}};
    return {o0, mirror_outcome3(o0)};
}

ResendOutcome mirror_outcome3(const ResendOutcome& o0) {
    return {3, PlaneState(3.0 * kPi / 2.0 - o0.state.theta()), o0.profile.swapped()};
}

OptimizedResend optimize_resend(Protocol proto, const RemappedEnsemble& ens, double mismatch,
                                const CurveOptions& opts) {
    std::vector<EfficiencyProfile> profiles = {{1.0, 1.0}};
    if (mismatch < 1.0) {
        profiles.push_back({1.0, mismatch});
        profiles.push_back({mismatch, 1.0});
    }
    OptimizedResend best;
    bool have = false;
    for (const EfficiencyProfile& prof : profiles) {
        auto qber_at = [&](double theta) {
            const RatioSolution r = min_ratio(build_penalty(proto, ens, PlaneState(theta), prof));
            return r.valid ? r.ratio : 1.0;
        };
        double grid_best_theta = 0.0;
        double grid_best = qber_at(0.0);
        const double step = 2.0 * kPi / opts.theta_points;
        for (int i = 1; i < opts.theta_points; ++i) {
            const double theta = i * step;
            const double q = qber_at(theta);
            if (q < grid_best) {
                grid_best = q;
                grid_best_theta = theta;
            }
        }
        const double theta = golden_section(grid_best_theta - step, grid_best_theta + step,
                                            opts.theta_refine_tol, qber_at);
        const double q = qber_at(theta);
        if (!have || q < best.qber) {
            best = {PlaneState(theta), prof, q};
            have = true;
        }
    }
    return best;
}

std::vector<CurvePoint> optimal_curve(Protocol proto, ResendMode mode, double mismatch,
                                      std::span<const double> delta_grid,
                                      const CurveOptions& opts) {
    if (delta_grid.empty()) {
        throw std::invalid_argument("optimal_curve: empty delta grid");
    }
    std::vector<CurvePoint> out(delta_grid.size());
    parallel_for(delta_grid.size(), [&](std::size_t i) {
        const double delta = delta_grid[i];
        const RemappedEnsemble ens(delta);
        ResendSpec spec;
        if (mode == ResendMode::fixed_resend) {
            spec = fixed_resend_spec(proto, mismatch);
        } else {
            const OptimizedResend o = optimize_resend(proto, ens, mismatch, opts);
            const ResendOutcome o0{0, o.state, o.profile};
            spec = {o0, mirror_outcome3(o0)};
        }
        const std::vector<PenaltyPair> pairs = build_pairs(proto, ens, spec);
        MinQberOptions mo;
        mo.e_detector = opts.e_detector;
        mo.density = ens.density_sum();
        const AttackSolution sol = min_qber(pairs, mo);
        out[i] = {delta, sol.qber, sol.conclusive_prob, sol.transmittance};
    });
    return out;
}

}  // namespace qkdlab
