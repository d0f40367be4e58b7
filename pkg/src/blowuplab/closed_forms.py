"""Exact solution families of u'' = A u u' + B u^3, used as test oracles.

Families:
  * ``Tanh`` -- global branch for B = 0:  u = -b tanh((A b / 2) t + c)
  * ``TanBranch`` / ``RecipTanhBranch`` -- the non-global B = 0 branches
  * ``RationalE0`` -- zero-energy rational family for A = 0, B > 0
  * ``Logistic`` -- solution of w' = g0 - k w^2 (comparison equation)
  * ``Lemniscatic`` -- scaled lemniscatic sine for A = 0, B < 0

Poles are data, not errors: evaluation past a singularity returns a
``PoleAt`` carrying the pole location, so sweep-style callers can compare
blow-up estimates against exact pole positions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .elliptic import sl
from .errors import BranchMismatch, DomainError
from .model import OdeParams

__all__ = [
    "Tanh",
    "RationalE0",
    "TanBranch",
    "RecipTanhBranch",
    "Logistic",
    "Lemniscatic",
    "ClosedForm",
    "PoleAt",
    "eval_closed_form",
    "sech_profile",
    "m4_constant_C",
    "rate_A_C",
]


@dataclass(frozen=True)
class Tanh:
    b: float
    c: float


@dataclass(frozen=True)
class RationalE0:
    u0: float
    sign: int  # +1 or -1, the sign in 1 + sign*sqrt(B/2)*u0*t

    def __post_init__(self):
        if self.u0 == 0.0:
            raise DomainError("rational family requires u0 != 0")
        if self.sign not in (-1, 1):
            raise DomainError("sign must be +1 or -1")


@dataclass(frozen=True)
class TanBranch:
    C: float
    u0: float

    def __post_init__(self):
        if self.C <= 0.0:
            raise DomainError("tan branch requires C > 0")


@dataclass(frozen=True)
class RecipTanhBranch:
    C: float
    u0: float

    def __post_init__(self):
        if self.C >= 0.0 or self.u0**2 <= -self.C:
            raise DomainError("reciprocal-tanh branch requires C < 0 and u0^2 > |C|")


@dataclass(frozen=True)
class Logistic:
    g0: float
    k: float
    v0: float

    def __post_init__(self):
        if self.g0 <= 0.0 or self.k <= 0.0:
            raise DomainError("logistic comparison requires g0 > 0 and k > 0")


@dataclass(frozen=True)
class Lemniscatic:
    Cc: float
    kappa: float
    t0: float


ClosedForm = Union[Tanh, RationalE0, TanBranch, RecipTanhBranch, Logistic, Lemniscatic]


@dataclass(frozen=True)
class PoleAt:
    t_pole: float


def rate_A_C(A: float, C: float) -> float:
    """The rate constant A_C = A sqrt(|C|) of the B = 0 branches."""
    return A * math.sqrt(abs(C))


def m4_constant_C(u0: float, v0: float, A: float) -> float:
    """Branch selector C = (2/A)(u'(0) - (A/2) u(0)^2) for B = 0."""
    if A == 0.0:
        raise DomainError("C is undefined for A = 0")
    return (2.0 / A) * (v0 - (A / 2.0) * u0 * u0)


def sech_profile(a: float, b: float, c: float, x: float) -> float:
    """Conformal factor a / cosh(b x + c) paired with the tanh family."""
    if a <= 0.0:
        raise DomainError("amplitude must be positive")
    return a / math.cosh(b * x + c)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise BranchMismatch(msg)


def eval_closed_form(cf: ClosedForm, params: OdeParams, t: float) -> tuple[float, float] | PoleAt:
    """Exact (u, u') of the family at time t, or the pole it hit."""
    A, B = params.A, params.B

    if isinstance(cf, Tanh):
        _require(B == 0.0 and A > 0.0, "tanh family requires B = 0, A > 0")
        theta = (A * cf.b / 2.0) * t + cf.c
        u = -cf.b * math.tanh(theta)
        v = -(A * cf.b**2 / 2.0) / math.cosh(theta) ** 2
        return u, v

    if isinstance(cf, RationalE0):
        _require(A == 0.0 and B > 0.0, "rational family requires A = 0, B > 0")
        r = math.sqrt(B / 2.0)
        denom = 1.0 + cf.sign * r * cf.u0 * t
        t_pole = -1.0 / (cf.sign * r * cf.u0)
        if (t_pole > 0 and t >= t_pole) or (t_pole < 0 and t <= t_pole):
            return PoleAt(t_pole)
        u = cf.u0 / denom
        v = -cf.sign * r * cf.u0**2 / denom**2
        return u, v

    if isinstance(cf, TanBranch):
        _require(B == 0.0 and A > 0.0, "tan branch requires B = 0, A > 0")
        sC = math.sqrt(cf.C)
        rate = rate_A_C(A, cf.C) / 2.0
        c = math.atan(cf.u0 / sC)
        theta = rate * t + c
        # nearest poles bracketing theta = c
        t_hi = (math.pi / 2.0 - c) / rate
        t_lo = (-math.pi / 2.0 - c) / rate
        if t >= t_hi:
            return PoleAt(t_hi)
        if t <= t_lo:
            return PoleAt(t_lo)
        u = sC * math.tan(theta)
        v = (A / 2.0) * (u * u + cf.C)
        return u, v

    if isinstance(cf, RecipTanhBranch):
        _require(B == 0.0 and A > 0.0, "reciprocal-tanh branch requires B = 0, A > 0")
        beta = math.sqrt(-cf.C)
        rate = rate_A_C(A, cf.C) / 2.0
        c = -math.atanh(beta / cf.u0)
        t_pole = -c / rate
        if (t_pole > 0 and t >= t_pole) or (t_pole < 0 and t <= t_pole):
            return PoleAt(t_pole)
        theta = rate * t + c
        u = -beta / math.tanh(theta)
        v = (A / 2.0) * (u * u + cf.C)
        return u, v

    if isinstance(cf, Logistic):
        a = math.sqrt(cf.g0 / cf.k)
        omega = math.sqrt(cf.g0 * cf.k)
        if abs(cf.v0) < a:
            theta = omega * t + math.atanh(cf.v0 / a)
            w = a * math.tanh(theta)
        elif cf.v0 == a or cf.v0 == -a:
            w = cf.v0
        else:
            c = math.atanh(a / cf.v0)
            t_pole = -c / omega
            if (t_pole > 0 and t >= t_pole) or (t_pole < 0 and t <= t_pole):
                return PoleAt(t_pole)
            w = a / math.tanh(omega * t + c)
        return w, cf.g0 - cf.k * w * w

    if isinstance(cf, Lemniscatic):
        _require(A == 0.0 and B < 0.0, "lemniscatic family requires A = 0, B < 0")
        _require(abs(cf.kappa**4 + B) <= 1e-10 * max(1.0, abs(B)), "kappa must satisfy kappa^4 = -B")
        # u = Cc * sl(rate (t + t0)) solves u'' = -kappa^4 u^3 with
        # rate = kappa^2 Cc / sqrt(2), since sl'' = -2 sl^3
        rate = cf.kappa**2 * cf.Cc / math.sqrt(2.0)
        y, yp = sl(rate * (t + cf.t0))
        return cf.Cc * y, cf.Cc * rate * yp

    raise TypeError(f"unknown closed form {cf!r}")
