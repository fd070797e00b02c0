"""Platform operating limits: bounds, workspace envelope, braking look-ahead.

The same limit definitions feed three consumers: feasibility predicates for
logged states, affine rows for the online solver, and the per-axis boxes of
the offline table controller. Limits are stored in SI units (rad, rad/s, m,
m/s, m/s^2); degree-valued config keys are converted at the config boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .platform_model import (
    A_ROT_LAT,
    A_ROT_LONG,
    A_TRAN_LAT,
    A_TRAN_LONG,
    N_STATES_EXPLICIT,
    N_STATES_IMPLICIT,
    OMEGA_LAT,
    OMEGA_LONG,
    S_LAT,
    S_LONG,
    THETA_LAT,
    THETA_LONG,
    V_LAT,
    V_LONG,
)

DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class ConstraintSet:
    """Symmetric operating limits of the motion platform."""

    omega_long_max: float = math.radians(3.0)  # pitch tilt-rate perception threshold
    omega_lat_max: float = math.radians(2.6)  # roll tilt-rate perception threshold
    theta_max: float = math.radians(30.0)
    v_max: float = 7.2
    s_axis_max: float = 0.35  # per-axis displacement box of the table controller
    a_tran_max: float = 9.81
    a_rot_max: float = 3.0  # rad/s^2, see run-header echo
    a_cmd_tran_max: float = 5.0
    a_cmd_rot_max: float = 3.0
    s_envelope_max: float = 0.5

    def __post_init__(self) -> None:
        for name, value in self.__dict__.items():
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"constraint limit {name} must be positive, got {value}")
        if self.s_axis_max > self.s_envelope_max:
            raise ValueError(
                f"s_axis_max ({self.s_axis_max}) must not exceed s_envelope_max ({self.s_envelope_max})"
            )


@dataclass(frozen=True)
class BrakingParams:
    """Coefficients of the braking look-ahead maps and their thresholds."""

    c_v: float = 1.0
    c_w: float = 1.0
    c_u: float = 0.45
    t_brk_p: float = 2.5  # displacement braking horizon [s]
    t_brk_theta: float = 0.5  # tilt braking horizon [s]
    s_thresh: float = 0.5
    theta_thresh: float = math.radians(30.0)

    def __post_init__(self) -> None:
        for name, value in self.__dict__.items():
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"braking parameter {name} must be positive, got {value}")


def braking_displacement(x: np.ndarray, b: BrakingParams) -> tuple[float, float]:
    """Displacement extrapolated over the braking horizon, per axis (12-state)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (N_STATES_IMPLICIT,):
        raise ValueError("braking maps need the 12-state variant (realized accelerations)")
    half_cu_t2 = 0.5 * b.c_u * b.t_brk_p**2
    s_br_long = x[S_LONG] + b.c_v * x[V_LONG] * b.t_brk_p + half_cu_t2 * x[A_TRAN_LONG]
    s_br_lat = x[S_LAT] + b.c_v * x[V_LAT] * b.t_brk_p + half_cu_t2 * x[A_TRAN_LAT]
    return s_br_long, s_br_lat


def braking_tilt(x: np.ndarray, b: BrakingParams) -> tuple[float, float]:
    """Tilt angle extrapolated over the braking horizon, per axis (12-state)."""
    x = np.asarray(x, dtype=float)
    if x.shape != (N_STATES_IMPLICIT,):
        raise ValueError("braking maps need the 12-state variant (realized accelerations)")
    half_cu_t2 = 0.5 * b.c_u * b.t_brk_theta**2
    th_br_long = x[THETA_LONG] + b.c_w * x[OMEGA_LONG] * b.t_brk_theta + half_cu_t2 * x[A_ROT_LONG]
    th_br_lat = x[THETA_LAT] + b.c_w * x[OMEGA_LAT] * b.t_brk_theta + half_cu_t2 * x[A_ROT_LAT]
    return th_br_long, th_br_lat


def envelope_norm(s_long: float, s_lat: float) -> float:
    """Radial distance of the combined platform displacement."""
    return math.hypot(s_long, s_lat)


def braking_displacement_matrix(b: BrakingParams) -> np.ndarray:
    """Rows mapping a 12-state vector to ``[s_br_long, s_br_lat]``."""
    m = np.zeros((2, N_STATES_IMPLICIT))
    half_cu_t2 = 0.5 * b.c_u * b.t_brk_p**2
    m[0, S_LONG] = 1.0
    m[0, V_LONG] = b.c_v * b.t_brk_p
    m[0, A_TRAN_LONG] = half_cu_t2
    m[1, S_LAT] = 1.0
    m[1, V_LAT] = b.c_v * b.t_brk_p
    m[1, A_TRAN_LAT] = half_cu_t2
    return m


def braking_tilt_matrix(b: BrakingParams) -> np.ndarray:
    """Rows mapping a 12-state vector to ``[theta_br_long, theta_br_lat]``."""
    m = np.zeros((2, N_STATES_IMPLICIT))
    half_cu_t2 = 0.5 * b.c_u * b.t_brk_theta**2
    m[0, THETA_LONG] = 1.0
    m[0, OMEGA_LONG] = b.c_w * b.t_brk_theta
    m[0, A_ROT_LONG] = half_cu_t2
    m[1, THETA_LAT] = 1.0
    m[1, OMEGA_LAT] = b.c_w * b.t_brk_theta
    m[1, A_ROT_LAT] = half_cu_t2
    return m


# (name, state index, attribute of ConstraintSet holding the symmetric limit)
_STATE_BOUND_SPEC = (
    ("omega_long", OMEGA_LONG, "omega_long_max"),
    ("omega_lat", OMEGA_LAT, "omega_lat_max"),
    ("theta_long", THETA_LONG, "theta_max"),
    ("theta_lat", THETA_LAT, "theta_max"),
    ("v_long", V_LONG, "v_max"),
    ("v_lat", V_LAT, "v_max"),
    ("a_tran_long", A_TRAN_LONG, "a_tran_max"),
    ("a_tran_lat", A_TRAN_LAT, "a_tran_max"),
    ("a_rot_long", A_ROT_LONG, "a_rot_max"),
    ("a_rot_lat", A_ROT_LAT, "a_rot_max"),
)


def state_bound_rows(c: ConstraintSet) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Selector rows and symmetric limits for the 12-state box bounds."""
    coef = np.zeros((len(_STATE_BOUND_SPEC), N_STATES_IMPLICIT))
    limits = np.empty(len(_STATE_BOUND_SPEC))
    names = []
    for i, (name, idx, attr) in enumerate(_STATE_BOUND_SPEC):
        coef[i, idx] = 1.0
        limits[i] = getattr(c, attr)
        names.append(name)
    return coef, limits, names


def input_bound_limits(c: ConstraintSet) -> np.ndarray:
    """Symmetric limits on the commanded-acceleration inputs (input order)."""
    return np.array([c.a_cmd_rot_max, c.a_cmd_tran_max, c.a_cmd_rot_max, c.a_cmd_tran_max])


@dataclass(frozen=True)
class ConstraintMargin:
    """One evaluated constraint row: margin > 0 means violated by that amount."""

    name: str
    value: float
    limit: float
    margin: float


@dataclass
class FeasibilityReport:
    """Every constraint row with its margin, plus the violating subset."""

    rows: list[ConstraintMargin]
    tol: float = DEFAULT_TOL
    violations: list[ConstraintMargin] = field(init=False)

    def __post_init__(self) -> None:
        self.violations = [r for r in self.rows if r.margin > self.tol]

    @property
    def feasible(self) -> bool:
        return not self.violations

    def margin(self, name: str) -> float:
        for r in self.rows:
            if r.name == name:
                return r.margin
        raise KeyError(name)


def check_feasible(
    x: np.ndarray,
    u_cmd: np.ndarray | None,
    c: ConstraintSet,
    b: BrakingParams,
    tol: float = DEFAULT_TOL,
) -> FeasibilityReport:
    """Evaluate every bound, braking, and envelope row for one state/input pair.

    The 8-state variant checks the kinematic box bounds (including the
    per-axis displacement box of the table controller); the 12-state variant
    additionally checks realized accelerations, braking extrapolations, and
    the workspace envelope.
    """
    x = np.asarray(x, dtype=float)
    rows: list[ConstraintMargin] = []

    def add(name: str, value: float, limit: float) -> None:
        rows.append(ConstraintMargin(name, value, limit, abs(value) - limit))

    if x.shape == (N_STATES_EXPLICIT,):
        add("omega_long", x[OMEGA_LONG], c.omega_long_max)
        add("omega_lat", x[OMEGA_LAT], c.omega_lat_max)
        add("theta_long", x[THETA_LONG], c.theta_max)
        add("theta_lat", x[THETA_LAT], c.theta_max)
        add("v_long", x[V_LONG], c.v_max)
        add("v_lat", x[V_LAT], c.v_max)
        add("s_long", x[S_LONG], c.s_axis_max)
        add("s_lat", x[S_LAT], c.s_axis_max)
    elif x.shape == (N_STATES_IMPLICIT,):
        coef, limits, names = state_bound_rows(c)
        for row, limit, name in zip(coef, limits, names):
            add(name, float(row @ x), limit)
        th_br_long, th_br_lat = braking_tilt(x, b)
        add("theta_br_long", th_br_long, b.theta_thresh)
        add("theta_br_lat", th_br_lat, b.theta_thresh)
        s_br_long, s_br_lat = braking_displacement(x, b)
        add("envelope_braking", envelope_norm(s_br_long, s_br_lat), b.s_thresh)
    else:
        raise ValueError(f"expected 8- or 12-state vector, got shape {x.shape}")

    if u_cmd is not None:
        u_cmd = np.asarray(u_cmd, dtype=float)
        limits = input_bound_limits(c)
        for name, idx in (
            ("a_cmd_rot_long", 0),
            ("a_cmd_tran_long", 1),
            ("a_cmd_rot_lat", 2),
            ("a_cmd_tran_lat", 3),
        ):
            add(name, float(u_cmd[idx]), float(limits[idx]))

    return FeasibilityReport(rows, tol=tol)
