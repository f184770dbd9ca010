"""Smoke test for the pybind11 module (run with PYTHONPATH at the built extension)."""

import math

import _qkdlab as q


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    approx(q.h2(0.5), 1.0, 1e-12)
    approx(q.sagnac_phase(1.5, 0.0, 1e8), 0.0, 0.0)
    approx(q.plugplay_phase(1e-9, math.pi / 2, 0.5e-9), math.pi / 4, 1e-12)

    approx(q.suboptimal_qber(1e-3), 1 / 6, 1e-4)

    pts = q.optimal_curve(q.Protocol.bb84, q.ResendMode.fixed, 1.0, [math.pi / 2])
    assert len(pts) == 1
    approx(pts[0][1], 0.25, 1e-9)

    params = q.SystemParams(length_km=88.0)
    approx(q.overall_eta(params), 0.08 * 10 ** (-0.21 * 88 / 10), 1e-12)
    obs = q.normal_observables(params)
    approx(obs.q_signal, 1.008e-6, 1e-9)

    rate = q.run_post(q.strategy_two(params, 1.31, 0.04), 8e-4, 1.16, 0)
    assert abs(rate.rate / 1.622e-6 - 1.0) < 0.02

    obs3 = q.strategy_three(params, q.StrategyParams(1.31, 0.04, 1e-9, 0.096))
    rate3 = q.run_post(obs3, 8e-4, 1.16, 0)
    assert abs(rate3.rate / 4.057e-8 - 1.0) < 0.02

    assert q.SECURITY_LABEL == "INSECURE (entanglement-breaking channel)"
    print("python smoke: ok")


if __name__ == "__main__":
    main()
