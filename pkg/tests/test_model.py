import math

import pytest

from blowuplab import (
    DomainError,
    NonFiniteError,
    OdeParams,
    State,
    params_from_coeffs,
    params_from_dimension,
    rhs,
)


def test_coefficients_from_dimension():
    p = params_from_dimension(3.0)
    assert p.A == 5.0 and p.B == -2.0 and p.m == 3.0
    p = params_from_dimension(4.0)
    assert p.A == 2.0 and p.B == 0.0
    p = params_from_dimension(5.0)
    assert p.A == 1.0 and abs(p.B - 2.0 / 9.0) < 1e-16
    p = params_from_dimension(8.0)
    assert p.A == 0.0 and abs(p.B - 2.0 / 9.0) < 1e-16
    p = params_from_dimension(9.0)
    assert p.A == pytest.approx(-1.0 / 7.0, rel=1e-15)
    assert abs(p.B - 10.0 / 49.0) < 1e-16


def test_discriminant_value():
    # A^2 + 8B collapses to (m/(m-2))^2, always positive for m > 2
    for m in (2.5, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 12.0):
        p = params_from_dimension(m)
        expected = (m / (m - 2.0)) ** 2
        assert p.disc == pytest.approx(expected, rel=1e-14)
        assert p.disc > 0.0


def test_roots_solve_characteristic_quadratic():
    for m in (2.5, 3.0, 4.0, 5.0, 6.5, 8.0, 9.0, 20.0):
        p = params_from_dimension(m)
        assert p.k_minus is not None and p.k_plus is not None
        assert p.k_minus <= p.k_plus
        for k in (p.k_minus, p.k_plus):
            assert abs(2.0 * k * k + p.A * k - p.B) < 1e-14


def test_known_root_values():
    p = params_from_dimension(3.0)
    assert p.k_minus == pytest.approx(-2.0, abs=1e-15)
    assert p.k_plus == pytest.approx(-0.5, abs=1e-15)
    p = params_from_dimension(5.0)
    assert p.k_minus == pytest.approx(-2.0 / 3.0, abs=1e-15)
    assert p.k_plus == pytest.approx(1.0 / 6.0, abs=1e-15)
    p = params_from_dimension(4.0)
    assert p.k_minus == -1.0 and p.k_plus == 0.0
    p = params_from_dimension(8.0)
    assert p.k_minus == pytest.approx(-1.0 / 3.0, abs=1e-15)
    assert p.k_plus == pytest.approx(1.0 / 3.0, abs=1e-15)


def test_negative_discriminant_has_no_roots():
    p = params_from_coeffs(1.0, -1.0)
    assert p.disc < 0.0
    assert p.k_minus is None and p.k_plus is None


def test_small_root_is_cancellation_free():
    # near-degenerate quadratic: the small root must come out accurate
    p = params_from_coeffs(1e8, 1.0)
    small = min(abs(p.k_minus), abs(p.k_plus))
    assert small == pytest.approx(1e-8, rel=1e-12)


def test_params_from_coeffs_has_no_dimension():
    p = params_from_coeffs(2.0, -4.0)
    assert p.m is None
    assert p.A == 2.0 and p.B == -4.0


def test_dimension_domain_error():
    with pytest.raises(DomainError):
        params_from_dimension(2.0)
    with pytest.raises(DomainError):
        params_from_dimension(-1.0)


def test_state_rejects_non_finite():
    with pytest.raises(NonFiniteError):
        State(0.0, math.inf, 0.0)
    with pytest.raises(NonFiniteError):
        State(0.0, 0.0, math.nan)
    with pytest.raises(NonFiniteError):
        State(math.nan, 0.0, 0.0)


def test_rhs_values():
    p = OdeParams(A=5.0, B=-2.0)
    du, dv = rhs(p, State(0.0, 2.0, 3.0))
    assert du == 3.0
    assert dv == 5.0 * 2.0 * 3.0 - 2.0 * 8.0
