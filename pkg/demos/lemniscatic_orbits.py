"""Periodic orbits for A = 0, B < 0 and the lemniscatic sine behind them.

u'' = -2 u^3 from (0, 1) is exactly the lemniscatic sine sl, periodic
with period four times the quarter period int_0^1 dy / sqrt(1 - y^4).
The return-map detector measures the period numerically; the same
machinery shows that the m = 3 decay solutions never return.
"""
import math

import blowuplab as bl


def main():
    Q = bl.lemniscate_quarter_period()
    print(f"quarter period      {Q:.15f}")
    print(f"(1/sqrt2) K(1/sqrt2) {bl.K_agm(1 / math.sqrt(2)) / math.sqrt(2):.15f}")

    p = bl.params_from_coeffs(0.0, -2.0)
    rep = bl.detect_period(p, bl.State(0.0, 0.0, 1.0), t_max=10.0)
    print(f"\nu'' = -2 u^3 from (0, 1):")
    print(f"  periodic        {rep.periodic}")
    print(f"  measured period {rep.period:.12f}")
    print(f"  4 x quarter     {4.0 * Q:.12f}")
    print(f"  closure error   {rep.closure_error:.2e}")

    # the same orbit written through the closed-form family
    cf = bl.Lemniscatic(Cc=1.0, kappa=2.0**0.25, t0=0.0)
    u, v = bl.eval_closed_form(cf, p, 1.234)
    y, yp = bl.sl(1.234)
    print(f"\nclosed form vs sl at t = 1.234: u = {u:.12f}, sl = {y:.12f}")

    p3 = bl.params_from_dimension(3.0)
    rep3 = bl.detect_period(p3, bl.State(0.0, 0.0, -0.5), t_max=30.0)
    print(f"\nm = 3 decay from (0, -0.5): periodic = {rep3.periodic} "
          f"(best closure {rep3.closure_error:.3e})")


if __name__ == "__main__":
    main()
