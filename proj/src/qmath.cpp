#include "qkdlab/qmath.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdlab {

PlaneState::PlaneState(double theta) {
    theta_ = std::fmod(theta, 2.0 * kPi);
    if (theta_ < 0.0) theta_ += 2.0 * kPi;
}

double PlaneState::overlap(const PlaneState& a, const PlaneState& b) {
    return std::cos((a.theta() - b.theta()) / 2.0);
}

SymOp2 projector(const PlaneState& s) {
    return projector(s.amplitudes());
}

SymOp2 projector(const Vec2& u) {
    return {u.x * u.x, u.x * u.y, u.y * u.y};
}

EigSym2 eig_sym2(const SymOp2& op) {
    EigSym2 out;
    const double half_tr = (op.a + op.c) / 2.0;
    const double half_diff = (op.a - op.c) / 2.0;
    const double disc = std::sqrt(half_diff * half_diff + op.b * op.b);
    out.lambda_min = half_tr - disc;
    out.lambda_max = half_tr + disc;
    if (disc == 0.0) {
        out.v_min = {1.0, 0.0};
        out.v_max = {0.0, 1.0};
        return out;
    }
    // Pick the better-conditioned eigenvector expression for v_max.
    Vec2 vmax;
    if (half_diff >= 0.0) {
        vmax = {half_diff + disc, op.b};
    } else {
        vmax = {op.b, disc - half_diff};
    }
    if (vmax.norm() == 0.0) {
        vmax = {1.0, 0.0};
    }
    out.v_max = vmax.normalized();
    out.v_min = {-out.v_max.y, out.v_max.x};
    return out;
}

SymOp2 pinv_sqrt(const SymOp2& op, double cutoff) {
    const EigSym2 e = eig_sym2(op);
    if (e.lambda_min < kPsdTol) {
        throw std::domain_error("pinv_sqrt: operator is not positive semidefinite");
    }
    SymOp2 out = SymOp2::zero();
    if (e.lambda_min > cutoff) {
        out += projector(e.v_min) * (1.0 / std::sqrt(e.lambda_min));
    }
    if (e.lambda_max > cutoff) {
        out += projector(e.v_max) * (1.0 / std::sqrt(e.lambda_max));
    }
    return out;
}

double trace_prod(const SymOp2& x, const SymOp2& y) {
    return x.a * y.a + 2.0 * x.b * y.b + x.c * y.c;
}

double h2(double p) {
    if (p < 0.0 || p > 1.0) {
        throw std::domain_error("h2: probability outside [0, 1]");
    }
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace qkdlab
