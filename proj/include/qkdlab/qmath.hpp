#pragma once

#include <array>
#include <cmath>

// Exact closed-form linear algebra for real symmetric 2x2 operators and
// pure qubit states in the X-Z plane (real amplitudes only).

namespace qkdlab {

inline constexpr double kPi = 3.14159265358979323846;

// Eigenvalues of a PSD-flagged operator may dip this far below zero
// before the operator is rejected as non-PSD.
inline constexpr double kPsdTol = -1e-9;

// Eigenvalues at or below this cutoff are treated as zero when forming
// pseudo-inverses. B_i becomes rank deficient as delta -> 0, so the
// cutoff controls that singular limit.
inline constexpr double kPinvCutoff = 1e-12;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
    Vec2 normalized() const {
        double n = norm();
        return {x / n, y / n};
    }
};

// Pure state cos(theta/2)|0> + sin(theta/2)|1>, theta reduced mod 2*pi.
// States whose angles differ by 2*pi are the same physical state.
class PlaneState {
  public:
    PlaneState() = default;
    explicit PlaneState(double theta);

    double theta() const { return theta_; }
    double amp0() const { return std::cos(theta_ / 2.0); }
    double amp1() const { return std::sin(theta_ / 2.0); }
    Vec2 amplitudes() const { return {amp0(), amp1()}; }

    // <a|b> = cos((theta_a - theta_b)/2)
    static double overlap(const PlaneState& a, const PlaneState& b);

  private:
    double theta_ = 0.0;
};

// Real symmetric matrix [[a, b], [b, c]].
struct SymOp2 {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    static SymOp2 identity() { return {1.0, 0.0, 1.0}; }
    static SymOp2 zero() { return {}; }

    double trace() const { return a + c; }
    double det() const { return a * c - b * b; }

    SymOp2 operator+(const SymOp2& o) const { return {a + o.a, b + o.b, c + o.c}; }
    SymOp2 operator-(const SymOp2& o) const { return {a - o.a, b - o.b, c - o.c}; }
    SymOp2 operator*(double s) const { return {a * s, b * s, c * s}; }
    SymOp2& operator+=(const SymOp2& o) {
        a += o.a;
        b += o.b;
        c += o.c;
        return *this;
    }

    Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, b * v.x + c * v.y}; }
    // v^T M v
    double quad(const Vec2& v) const { return apply(v).dot(v); }
};

struct EigSym2 {
    double lambda_min = 0.0;
    Vec2 v_min;
    double lambda_max = 0.0;
    Vec2 v_max;
};

// Rank-one projector |s><s| of a plane state.
SymOp2 projector(const PlaneState& s);
SymOp2 projector(const Vec2& unit);

// Closed-form eigendecomposition. v_min and v_max are unit norm and
// orthogonal; a degenerate spectrum returns the canonical basis vectors.
EigSym2 eig_sym2(const SymOp2& op);

// op^{-1/2} on the span of eigenvalues > cutoff, zero elsewhere.
// Throws std::domain_error for non-PSD input.
SymOp2 pinv_sqrt(const SymOp2& op, double cutoff = kPinvCutoff);

// Tr(x y) for symmetric x, y.
double trace_prod(const SymOp2& x, const SymOp2& y);

// Binary entropy H_2(p); h2(0) = h2(1) = 0. Throws std::domain_error
// outside [0, 1].
double h2(double p);

}  // namespace qkdlab
