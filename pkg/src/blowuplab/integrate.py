"""Time-steppers and the adaptive driver with blow-up event detection.

Two steppers are provided: the classical explicit Runge-Kutta method of
order 4 and the 3-stage Gauss-Legendre collocation method of order 6.
The driver uses step-doubling (Richardson) local error control, caps the
step near blow-up by the natural time scale 1/|u|, and records a
termination verdict instead of raising when a solution escapes.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import quad

from .errors import DomainError, FitFailure, NonFiniteError, StageSolveFailure
from .model import OdeParams, State, params_from_coeffs, rhs

__all__ = [
    "IntegratorKind",
    "IntegrateOptions",
    "Termination",
    "Trajectory",
    "step_rk4",
    "step_gauss6",
    "integrate",
    "estimate_blowup_time",
    "quadrature_blowup_time",
]


class IntegratorKind(enum.Enum):
    RK4 = "rk4"
    GAUSS6 = "gauss6"


@dataclass(frozen=True)
class IntegrateOptions:
    """Driver parameters; all thresholds strictly positive."""

    h0: float = 1e-3
    t_end: float = 1.0
    blowup_threshold: float = 1e8
    local_tol: float = 1e-10
    h_min: float = 1e-14
    max_steps: int = 10**7
    record_every: int = 1
    h_cap_factor: float = 0.1  # step cap h <= h_cap_factor/|u| near blow-up
    h_max: float | None = None  # optional global step-size ceiling

    def __post_init__(self):
        if self.h0 <= 0 or self.blowup_threshold <= 0 or self.local_tol <= 0 or self.h_min <= 0:
            raise DomainError("h0, blowup_threshold, local_tol and h_min must be positive")
        if self.h_cap_factor <= 0:
            raise DomainError("h_cap_factor must be positive")
        if self.h_max is not None and self.h_max <= 0:
            raise DomainError("h_max must be positive when given")
        if self.max_steps < 1 or self.record_every < 1:
            raise DomainError("max_steps and record_every must be >= 1")


@dataclass(frozen=True)
class Termination:
    """How a run ended: Completed, BlowUp, StepUnderflow or MaxSteps."""

    kind: str  # "completed" | "blowup" | "step_underflow" | "max_steps"
    t_estimate: float | None = None  # blow-up time estimate
    direction: int | None = None  # +1 forward in t, -1 backward
    t_last: float | None = None


@dataclass
class Trajectory:
    params: OdeParams
    states: list[State]
    termination: Termination
    integrator: IntegratorKind
    options: IntegrateOptions
    n_steps: int = 0
    # low-order residuals of the recorded times: the exact step-sum time
    # of states[i] is t[i] - t_residual[i].  Recorded separately because
    # a float64 time stamp alone cannot resolve steps of size ~1e-5 near
    # blow-up to the accuracy the exponential g_k diagnostic needs.
    t_residual: list[float] | None = None

    @property
    def t(self) -> np.ndarray:
        return np.array([s.t for s in self.states])

    @property
    def u(self) -> np.ndarray:
        return np.array([s.u for s in self.states])

    @property
    def v(self) -> np.ndarray:
        return np.array([s.v for s in self.states])


# ---------------------------------------------------------------------------
# steppers

def _check_finite(u: float, v: float) -> None:
    if not (math.isfinite(u) and math.isfinite(v)):
        raise NonFiniteError("stage value overflowed")


def _rk4_increment(p: OdeParams, u: float, v: float, h: float) -> tuple[float, float]:
    """State increment of one classical fourth-order Runge-Kutta step."""
    f = lambda u, v: (v, p.A * u * v + p.B * u**3)
    k1u, k1v = f(u, v)
    _check_finite(k1u, k1v)
    k2u, k2v = f(u + 0.5 * h * k1u, v + 0.5 * h * k1v)
    k3u, k3v = f(u + 0.5 * h * k2u, v + 0.5 * h * k2v)
    k4u, k4v = f(u + h * k3u, v + h * k3v)
    _check_finite(k4u, k4v)
    du = (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
    dv = (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
    _check_finite(du, dv)
    return du, dv


def step_rk4(p: OdeParams, s: State, h: float) -> State:
    """One classical fourth-order Runge-Kutta step."""
    if h == 0.0:
        raise DomainError("step size must be nonzero")
    du, dv = _rk4_increment(p, s.u, s.v, h)
    return State(s.t + h, s.u + du, s.v + dv)


# 3-point Gauss-Legendre collocation tableau, held in extended precision:
# stage arithmetic runs in longdouble so thousands of steps near blow-up
# do not accumulate one float64 rounding ulp each
_LD = np.longdouble
_SQ15 = np.sqrt(_LD(15))
_GL_A = np.array(
    [
        [_LD(5) / 36, _LD(2) / 9 - _SQ15 / 15, _LD(5) / 36 - _SQ15 / 30],
        [_LD(5) / 36 + _SQ15 / 24, _LD(2) / 9, _LD(5) / 36 - _SQ15 / 24],
        [_LD(5) / 36 + _SQ15 / 30, _LD(2) / 9 + _SQ15 / 15, _LD(5) / 36],
    ],
    dtype=_LD,
)
_GL_B = np.array([_LD(5) / 18, _LD(4) / 9, _LD(5) / 18], dtype=_LD)
_GL_C = np.array([_LD(1) / 2 - _SQ15 / 10, _LD(1) / 2, _LD(1) / 2 + _SQ15 / 10], dtype=_LD)


def _f_vec(p: OdeParams, y: np.ndarray) -> np.ndarray:
    u, v = y
    return np.array([v, p.A * u * v + p.B * u**3])


def _jac(p: OdeParams, y: np.ndarray) -> np.ndarray:
    u, v = y
    return np.array([[0.0, 1.0], [p.A * v + 3.0 * p.B * u * u, p.A * u]])


def _gauss6_increment(
    p: OdeParams,
    u: float,
    v: float,
    h: float,
    stage_tol: float = 1e-13,
    max_iter: int = 50,
) -> tuple[float, float]:
    """State increment of one 3-stage Gauss-Legendre (order 6) step.

    Stage equations are solved by fixed-point iteration seeded with the
    Euler prediction; if that fails to contract within 10 sweeps, a
    Newton iteration on the 6-dimensional stage system takes over.
    """
    y0 = np.array([u, v], dtype=_LD)
    h = _LD(h)
    f0 = _f_vec(p, y0)
    if not np.all(np.isfinite(f0)):
        raise NonFiniteError("right-hand side non-finite at step start")
    # stage values Y_i, seeded with the Euler prediction along the nodes
    Y = y0[None, :] + h * _GL_C[:, None] * f0[None, :]

    def residual(Y):
        F = np.array([_f_vec(p, Y[i]) for i in range(3)])
        R = Y - y0[None, :] - h * (_GL_A @ F)
        return R, F

    converged = False
    for _ in range(10):
        R, F = residual(Y)
        if not np.all(np.isfinite(R)):
            raise NonFiniteError("stage iteration overflowed")
        Y_new = y0[None, :] + h * (_GL_A @ F)
        delta = np.max(np.abs(Y_new - Y))
        Y = Y_new
        if delta <= stage_tol:
            converged = True
            break
    if not converged:
        # Newton on the stacked 6-dim system
        for _ in range(max_iter):
            R, F = residual(Y)
            if not np.all(np.isfinite(R)):
                raise NonFiniteError("stage iteration overflowed")
            if np.max(np.abs(R)) <= stage_tol:
                converged = True
                break
            J = np.eye(6)
            stage_jacs = [_jac(p, Y[j].astype(np.float64)) for j in range(3)]
            for i in range(3):
                for j in range(3):
                    J[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] -= float(h * _GL_A[i, j]) * stage_jacs[j]
            try:
                dz = np.linalg.solve(J, R.astype(np.float64).ravel())
            except np.linalg.LinAlgError as exc:
                raise StageSolveFailure("singular stage Jacobian") from exc
            Y = Y - dz.reshape(3, 2)
        else:
            raise StageSolveFailure(f"stage equations not solved to {stage_tol} in {max_iter} iterations")
        R, F = residual(Y)
        if np.max(np.abs(R)) > stage_tol:
            raise StageSolveFailure(f"stage residual {np.max(np.abs(R)):.3e} above tolerance")
    # polish: two extra contraction sweeps push the stage defect from the
    # stopping tolerance down to rounding level (factor ~ (h L)^2)
    for _ in range(2):
        F = np.array([_f_vec(p, Y[i]) for i in range(3)])
        Y = y0[None, :] + h * (_GL_A @ F)
    F = np.array([_f_vec(p, Y[i]) for i in range(3)])
    dy = h * (_GL_B @ F)
    _check_finite(y0[0] + dy[0], y0[1] + dy[1])
    return float(dy[0]), float(dy[1])


def step_gauss6(
    p: OdeParams,
    s: State,
    h: float,
    stage_tol: float = 1e-13,
    max_iter: int = 50,
) -> State:
    """One step of the 3-stage Gauss-Legendre method (order 6)."""
    if h == 0.0:
        raise DomainError("step size must be nonzero")
    if stage_tol <= 0:
        raise DomainError("stage_tol must be positive")
    du, dv = _gauss6_increment(p, s.u, s.v, h, stage_tol, max_iter)
    return State(s.t + h, s.u + du, s.v + dv)


def _increment(
    p: OdeParams, u: float, v: float, h: float, kind: IntegratorKind
) -> tuple[float, float]:
    if kind is IntegratorKind.RK4:
        return _rk4_increment(p, u, v, h)
    return _gauss6_increment(p, u, v, h)


# ---------------------------------------------------------------------------
# driver

def integrate(p: OdeParams, s0: State, kind: IntegratorKind, opts: IntegrateOptions) -> Trajectory:
    """March from s0 toward opts.t_end with step-doubling error control.

    Backward targets are handled by integrating the time-reversed system
    (t -> -t, v -> -v, A -> -A) forward and mapping the result back, so a
    single forward driver serves both directions.
    """
    forward = opts.t_end >= s0.t
    if forward:
        return _integrate_forward(p, s0, kind, opts, direction=+1)
    p_rev = params_from_coeffs(-p.A, p.B)
    p_rev = replace(p_rev, m=p.m)
    s0_rev = State(-s0.t, s0.u, -s0.v)
    opts_rev = replace(opts, t_end=-opts.t_end)
    traj = _integrate_forward(p_rev, s0_rev, kind, opts_rev, direction=-1)
    states = [State(-s.t, s.u, -s.v) for s in traj.states]
    term = traj.termination
    if term.kind == "blowup" and term.t_estimate is not None:
        term = replace(term, t_estimate=-term.t_estimate)
    if term.t_last is not None:
        term = replace(term, t_last=-term.t_last)
    resid = [-r for r in traj.t_residual] if traj.t_residual is not None else None
    return Trajectory(p, states, term, kind, opts, traj.n_steps, t_residual=resid)


def _kahan_add(x: float, comp: float, inc: float) -> tuple[float, float]:
    """Compensated accumulation x += inc; returns the new (x, comp)."""
    y = inc - comp
    t = x + y
    comp = (t - x) - y
    return t, comp


def _integrate_forward(
    p: OdeParams, s0: State, kind: IntegratorKind, opts: IntegrateOptions, direction: int
) -> Trajectory:
    order = 4 if kind is IntegratorKind.RK4 else 6
    gain = 1.0 / (2**order - 1.0)
    # state accumulated by compensated summation of step increments, so
    # long runs do not pick up one coherent rounding ulp per step
    t, u, v = s0.t, s0.u, s0.v
    ct = cu = cv = 0.0
    h = opts.h0
    s = s0
    states = [s0]
    resid = [0.0]
    n_acc = 0
    termination = None
    while True:
        if t >= opts.t_end - 1e-15 * max(1.0, abs(opts.t_end)):
            termination = Termination("completed")
            break
        if n_acc >= opts.max_steps:
            termination = Termination("max_steps", t_last=t)
            break
        # natural time scale near blow-up is 1/|u|
        if abs(u) > 1.0:
            h = min(h, opts.h_cap_factor / abs(u))
        if opts.h_max is not None:
            h = min(h, opts.h_max)
        h = min(h, opts.t_end - t)
        if h < opts.h_min:
            termination = Termination("step_underflow", t_last=t)
            break
        try:
            dfu, dfv = _increment(p, u, v, h, kind)
            d1u, d1v = _increment(p, u, v, 0.5 * h, kind)
            d2u, d2v = _increment(p, u + d1u, v + d1v, 0.5 * h, kind)
        except (NonFiniteError, StageSolveFailure):
            h *= 0.5
            continue
        du, dv = d1u + d2u, d1v + d2v
        err = gain * max(
            abs(dfu - du) / max(1.0, abs(u + du)),
            abs(dfv - dv) / max(1.0, abs(v + dv)),
        )
        if err > opts.local_tol:
            h *= max(0.2, 0.9 * (opts.local_tol / err) ** (1.0 / (order + 1)))
            continue
        u, cu = _kahan_add(u, cu, du)
        v, cv = _kahan_add(v, cv, dv)
        t, ct = _kahan_add(t, ct, h)
        s = State(t, u, v)
        n_acc += 1
        if n_acc % opts.record_every == 0:
            states.append(s)
            resid.append(ct)
        if abs(u) > opts.blowup_threshold or abs(v) > opts.blowup_threshold**2:
            if states[-1] is not s:
                states.append(s)
                resid.append(ct)
            try:
                t_est = _blowup_time_from_states(states)
            except FitFailure:
                t_est = t
            term = Termination("blowup", t_estimate=t_est, direction=direction)
            return Trajectory(p, states, term, kind, opts, n_acc, t_residual=resid)
        if err > 0:
            h *= min(5.0, max(0.2, 0.9 * (opts.local_tol / err) ** (1.0 / (order + 1))))
        else:
            h *= 5.0
    if states[-1] is not s:
        states.append(s)
        resid.append(ct)
    return Trajectory(p, states, termination, kind, opts, n_acc, t_residual=resid)


def _blowup_time_from_states(states: list[State], min_u: float = 1e3) -> float:
    """Fit 1/u affine in t on the blow-up tail and return its root."""
    tail = [s for s in states if abs(s.u) >= min_u][-20:]
    if len(tail) < 4:
        raise FitFailure(f"only {len(tail)} tail samples with |u| >= {min_u}")
    t = np.array([s.t for s in tail])
    w = np.array([1.0 / s.u for s in tail])
    slope, intercept = np.polyfit(t, w, 1)
    if slope == 0.0 or not math.isfinite(slope) or not math.isfinite(intercept):
        raise FitFailure("degenerate blow-up tail fit")
    return float(-intercept / slope)


def estimate_blowup_time(traj: Trajectory) -> float:
    """Blow-up time from the asymptotic model u ~ c/(T - t)."""
    if traj.termination.kind != "blowup":
        raise FitFailure("trajectory did not terminate in blow-up")
    return _blowup_time_from_states(traj.states)


def quadrature_blowup_time(Acoef: float, C: float, a: float) -> float:
    """T = integral_a^inf dv / sqrt(Acoef v^4 + C).

    This is the escape time of v' = sqrt(Acoef v^4 + C) from v(0) = a.
    A vanishing radicand at the left endpoint is allowed (integrable
    inverse-square-root singularity); a radicand that turns negative
    anywhere on [a, inf) is a domain error.
    """
    if Acoef <= 0:
        raise DomainError("quartic coefficient must be positive")
    r_a = Acoef * a**4 + C
    if r_a < 0:
        raise DomainError("negative radicand at the left endpoint")
    if C < 0:
        v_star = (-C / Acoef) ** 0.25
        if a < v_star:
            raise DomainError("radicand vanishes inside the integration range")
    # substitution v = a + s^2 removes the endpoint singularity
    def g(s):
        return 2.0 * s / math.sqrt(Acoef * (a + s * s) ** 4 + C)

    val, _ = quad(g, 0.0, np.inf, epsabs=1e-12, epsrel=1e-12, limit=400)
    return float(val)
