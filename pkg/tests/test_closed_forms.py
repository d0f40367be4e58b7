import math

import numpy as np
import pytest

from blowuplab import (
    BranchMismatch,
    DomainError,
    Lemniscatic,
    Logistic,
    PoleAt,
    RationalE0,
    RecipTanhBranch,
    TanBranch,
    Tanh,
    eval_closed_form,
    m4_constant_C,
    params_from_coeffs,
    params_from_dimension,
    rate_A_C,
    sech_profile,
)

P4 = params_from_dimension(4.0)
P8 = params_from_dimension(8.0)
PLEM = params_from_coeffs(0.0, -2.0)

RECIP_TANH_POLE = 0.7603459963009463  # (2/(A beta)) atanh(beta/u0), A=2, C=-3, u0=2


def _ode_residual(p, cf, ts, h=1e-3):
    """Max of |u'' - A u u' - B u^3| / max(1, |u|^3) by central differences."""
    worst = 0.0
    for t in ts:
        vals = [eval_closed_form(cf, p, t + k * h) for k in (-2, -1, 0, 1, 2)]
        if any(isinstance(v, PoleAt) for v in vals):
            continue
        u = [uv[0] for uv in vals]
        v0 = vals[2][1]
        d2 = (-u[4] + 16 * u[3] - 30 * u[2] + 16 * u[1] - u[0]) / (12 * h * h)
        d1 = (-u[4] + 8 * u[3] - 8 * u[1] + u[0]) / (12 * h)
        res = abs(d2 - p.A * u[2] * v0 - p.B * u[2] ** 3)
        res = max(res, abs(d1 - v0))
        worst = max(worst, res / max(1.0, abs(u[2]) ** 3))
    return worst


def test_tanh_family_satisfies_ode():
    cf = Tanh(b=1.5, c=0.3)
    ts = np.linspace(-4.0, 4.0, 100)
    assert _ode_residual(P4, cf, ts) < 1e-6


def test_tanh_values():
    cf = Tanh(b=1.0, c=0.0)
    u, v = eval_closed_form(cf, P4, 0.7)
    assert u == pytest.approx(-math.tanh(0.7), rel=1e-15)
    assert v == pytest.approx(-1.0 / math.cosh(0.7) ** 2, rel=1e-15)


def test_rational_family_satisfies_ode():
    cf = RationalE0(u0=1.0, sign=-1)
    ts = np.linspace(-5.0, 2.8, 100)
    assert _ode_residual(P8, cf, ts) < 1e-6


def test_rational_family_pole_and_values():
    # u = 3/(3 - t), pole at t = 3, u'(2) = 3
    cf = RationalE0(u0=1.0, sign=-1)
    u, v = eval_closed_form(cf, P8, 2.0)
    assert u == pytest.approx(3.0, rel=1e-12)
    assert v == pytest.approx(3.0, rel=1e-12)
    res = eval_closed_form(cf, P8, 3.0)
    assert isinstance(res, PoleAt)
    assert res.t_pole == pytest.approx(3.0, rel=1e-12)
    assert isinstance(eval_closed_form(cf, P8, 5.0), PoleAt)


def test_tan_branch_satisfies_ode():
    cf = TanBranch(C=2.0, u0=0.5)
    rate = rate_A_C(P4.A, 2.0) / 2.0
    c = math.atan(0.5 / math.sqrt(2.0))
    t_hi = (math.pi / 2.0 - c) / rate
    t_lo = (-math.pi / 2.0 - c) / rate
    ts = np.linspace(t_lo + 0.1, t_hi - 0.1, 100)
    assert _ode_residual(P4, cf, ts) < 1e-6
    assert isinstance(eval_closed_form(cf, P4, t_hi + 0.1), PoleAt)
    assert isinstance(eval_closed_form(cf, P4, t_lo - 0.1), PoleAt)


def test_recip_tanh_branch_satisfies_ode():
    cf = RecipTanhBranch(C=-3.0, u0=2.0)
    ts = np.linspace(-3.0, RECIP_TANH_POLE - 0.15, 100)
    assert _ode_residual(P4, cf, ts) < 1e-6


def test_recip_tanh_pole_location():
    cf = RecipTanhBranch(C=-3.0, u0=2.0)
    res = eval_closed_form(cf, P4, 1.0)
    assert isinstance(res, PoleAt)
    assert res.t_pole == pytest.approx(RECIP_TANH_POLE, rel=1e-12)
    u, v = eval_closed_form(cf, P4, 0.0)
    assert u == pytest.approx(2.0, rel=1e-12)
    assert v == pytest.approx(1.0, rel=1e-12)  # v = (A/2)(u^2 + C)


def test_lemniscatic_satisfies_ode():
    cf = Lemniscatic(Cc=1.3, kappa=2.0**0.25, t0=0.2)
    ts = np.linspace(-5.0, 5.0, 100)
    assert _ode_residual(PLEM, cf, ts) < 1e-6


def test_lemniscatic_amplitude():
    cf = Lemniscatic(Cc=1.3, kappa=2.0**0.25, t0=0.0)
    u0, v0 = eval_closed_form(cf, PLEM, 0.0)
    assert u0 == 0.0
    assert v0 == pytest.approx(1.3 * 2.0**0.5 * 1.3 / math.sqrt(2.0), rel=1e-12)
    us = [eval_closed_form(cf, PLEM, t)[0] for t in np.linspace(0.0, 20.0, 400)]
    assert max(abs(u) for u in us) <= 1.3 * (1.0 + 1e-9)
    assert max(abs(u) for u in us) > 1.29


def test_logistic_branches():
    # interior branch: w -> sqrt(g0/k)
    cf = Logistic(g0=1.0, k=2.0, v0=0.3)
    w, dw = eval_closed_form(cf, params_from_coeffs(0.0, 0.0), 0.0)
    assert w == pytest.approx(0.3, rel=1e-12)
    assert dw == pytest.approx(1.0 - 2.0 * 0.09, rel=1e-12)
    w_inf, _ = eval_closed_form(cf, params_from_coeffs(0.0, 0.0), 50.0)
    assert w_inf == pytest.approx(math.sqrt(0.5), rel=1e-9)
    # equilibrium branch
    cf = Logistic(g0=1.0, k=1.0, v0=1.0)
    w, dw = eval_closed_form(cf, params_from_coeffs(0.0, 0.0), 3.0)
    assert w == 1.0 and dw == 0.0
    # exterior branch has a backward pole
    cf = Logistic(g0=1.0, k=1.0, v0=2.0)
    w, dw = eval_closed_form(cf, params_from_coeffs(0.0, 0.0), 0.0)
    assert w == pytest.approx(2.0, rel=1e-12)
    res = eval_closed_form(cf, params_from_coeffs(0.0, 0.0), -10.0)
    assert isinstance(res, PoleAt)
    assert res.t_pole < 0.0


def test_logistic_satisfies_comparison_ode():
    cf = Logistic(g0=1.0, k=2.0, v0=0.3)
    p0 = params_from_coeffs(0.0, 0.0)
    h = 1e-4
    for t in np.linspace(0.0, 3.0, 50):
        wm, _ = eval_closed_form(cf, p0, t - h)
        w0, dw = eval_closed_form(cf, p0, t)
        wp, _ = eval_closed_form(cf, p0, t + h)
        assert abs((wp - wm) / (2 * h) - dw) < 1e-6
        assert abs(dw - (1.0 - 2.0 * w0 * w0)) < 1e-12


def test_branch_mismatch_errors():
    with pytest.raises(BranchMismatch):
        eval_closed_form(Tanh(1.0, 0.0), params_from_dimension(3.0), 0.0)
    with pytest.raises(BranchMismatch):
        eval_closed_form(RationalE0(1.0, 1), P4, 0.0)
    with pytest.raises(BranchMismatch):
        eval_closed_form(Lemniscatic(1.0, 1.0, 0.0), PLEM, 0.0)  # kappa^4 != -B
    with pytest.raises(BranchMismatch):
        eval_closed_form(Lemniscatic(1.0, 2.0**0.25, 0.0), P8, 0.0)


def test_constructor_domain_errors():
    with pytest.raises(DomainError):
        TanBranch(C=-1.0, u0=0.5)
    with pytest.raises(DomainError):
        RecipTanhBranch(C=1.0, u0=2.0)
    with pytest.raises(DomainError):
        RecipTanhBranch(C=-4.0, u0=1.0)  # u0^2 <= |C|
    with pytest.raises(DomainError):
        RationalE0(u0=0.0, sign=1)
    with pytest.raises(DomainError):
        RationalE0(u0=1.0, sign=2)
    with pytest.raises(DomainError):
        Logistic(g0=-1.0, k=1.0, v0=0.0)
    with pytest.raises(DomainError):
        sech_profile(-1.0, 1.0, 0.0, 0.0)


def test_m4_constant_C():
    assert m4_constant_C(2.0, 1.0, 2.0) == pytest.approx(-3.0, rel=1e-15)
    assert m4_constant_C(0.0, -1.0, 2.0) == pytest.approx(-1.0, rel=1e-15)
    with pytest.raises(DomainError):
        m4_constant_C(1.0, 1.0, 0.0)


def test_sech_profile_values():
    assert sech_profile(2.0, 1.0, 0.0, 0.0) == 2.0
    assert sech_profile(1.0, 2.0, 0.5, 1.0) == pytest.approx(1.0 / math.cosh(2.5), rel=1e-15)
