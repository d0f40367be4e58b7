"""Numerical laboratory for the ODE family u'' = A u u' + B u^3."""

from .classify import PeriodReport, Verdict, VerdictCheck, classify, detect_period, verify_verdict
from .closed_forms import (
    ClosedForm,
    Lemniscatic,
    Logistic,
    PoleAt,
    RationalE0,
    RecipTanhBranch,
    TanBranch,
    Tanh,
    eval_closed_form,
    m4_constant_C,
    rate_A_C,
    sech_profile,
)
from .colehopf import ProfileF, eq0_residual_fd, eq0_residual_from_u, fill_eq0_residual, reconstruct_f
from .diagnostics import (
    DiagnosticsReport,
    check_energy_law,
    check_gk_identity,
    cumulative_u_integral,
    diagnostics_report,
    energy,
    energy_drift,
    g_k,
)
from .elliptic import K_agm, LemniscaticTable, lemniscate_quarter_period, sl
from .errors import (
    BlownUpTrajectory,
    BlowupLabError,
    BranchMismatch,
    DomainError,
    FitFailure,
    Inconclusive,
    InsufficientData,
    InsufficientSamples,
    NonFiniteError,
    NonUniformGrid,
    NotACharacteristicRoot,
    StageSolveFailure,
)
from .integrate import (
    IntegrateOptions,
    IntegratorKind,
    Termination,
    Trajectory,
    estimate_blowup_time,
    integrate,
    quadrature_blowup_time,
    step_gauss6,
    step_rk4,
)
from .model import OdeParams, State, params_from_coeffs, params_from_dimension, rhs

__version__ = "0.1.0"
