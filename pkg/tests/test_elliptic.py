import math

import numpy as np
import pytest

from blowuplab import DomainError, K_agm, lemniscate_quarter_period, sl

# tanh-sinh quadrature oracles
QUARTER_PERIOD = 1.31102877714605990523235  # integral_0^1 dy / sqrt(1 - y^4)
K_099 = 3.35660052336119237603347  # K(0.99)


def test_K_agm_special_values():
    assert K_agm(0.0) == pytest.approx(math.pi / 2.0, rel=1e-15)
    assert K_agm(0.99) == pytest.approx(K_099, rel=1e-14)


def test_K_agm_domain():
    with pytest.raises(DomainError):
        K_agm(1.0)
    with pytest.raises(DomainError):
        K_agm(-0.1)
    with pytest.raises(DomainError):
        K_agm(1.5)


def test_quarter_period_value():
    assert abs(lemniscate_quarter_period() - QUARTER_PERIOD) < 1e-12


def test_quarter_period_agm_identity():
    # (1/sqrt(2)) K(1/sqrt(2)) equals the lemniscatic quarter period
    val = K_agm(1.0 / math.sqrt(2.0)) / math.sqrt(2.0)
    assert abs(val - lemniscate_quarter_period()) < 1e-10


def test_sl_at_origin_and_quarter_period():
    y, dy = sl(0.0)
    assert y == 0.0 and dy == 1.0
    Q = lemniscate_quarter_period()
    y, dy = sl(Q)
    assert abs(y - 1.0) < 1e-10
    assert abs(dy) < 1e-6


def test_sl_is_odd():
    for t in (0.3, 0.9, 1.7, 2.5):
        y_pos, dy_pos = sl(t)
        y_neg, dy_neg = sl(-t)
        assert abs(y_neg + y_pos) < 1e-12
        assert abs(dy_neg - dy_pos) < 1e-12


def test_sl_half_period_antisymmetry():
    Q = lemniscate_quarter_period()
    for t in (0.2, 0.7, 1.1):
        y, dy = sl(t)
        y2, dy2 = sl(t + 2.0 * Q)
        assert abs(y2 + y) < 1e-10
        assert abs(dy2 + dy) < 1e-10


def test_sl_periodicity():
    Q = lemniscate_quarter_period()
    for t in (0.0, 0.4, 1.3, 2.2):
        y, dy = sl(t)
        y2, dy2 = sl(t + 4.0 * Q)
        assert abs(y2 - y) < 1e-9
        assert abs(dy2 - dy) < 1e-9


def test_sl_first_integral():
    # (sl')^2 + sl^4 = 1 everywhere
    rng = np.random.default_rng(5)
    for t in rng.uniform(-10.0, 10.0, size=50):
        y, dy = sl(float(t))
        assert abs(dy * dy + y**4 - 1.0) < 1e-10
        assert abs(y) <= 1.0 + 1e-9


def test_sl_first_positive_zero():
    # bisection for the zero expected at twice the quarter period
    Q = lemniscate_quarter_period()
    lo, hi = 1.5 * Q, 2.5 * Q
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if sl(lo)[0] * sl(mid)[0] <= 0.0:
            hi = mid
        else:
            lo = mid
    assert abs(0.5 * (lo + hi) - 2.0 * Q) < 1e-6
