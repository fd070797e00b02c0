"""4-DoF motion platform dynamics.

Two state-space variants share the same kinematic core:

* 8-state (used by the offline table controller):
  ``[omega_long, theta_long, v_long, s_long, omega_lat, theta_lat, v_lat, s_lat]``
  driven directly by realized accelerations.
* 12-state (used by the online controller and as the simulation plant):
  the 8 kinematic states plus the realized accelerations
  ``[a_tran_long, a_rot_long, a_tran_lat, a_rot_lat]``, each tracking its
  commanded value through a first-order lag.

Inputs are ordered ``[a_rot_long, a_tran_long, a_rot_lat, a_tran_lat]``:
realized accelerations for the 8-state variant, commanded accelerations for
the 12-state variant.

Angles are radians throughout; degrees appear only at config/report
boundaries. All functions here are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# kinematic state indices (shared by both variants)
OMEGA_LONG, THETA_LONG, V_LONG, S_LONG = 0, 1, 2, 3
OMEGA_LAT, THETA_LAT, V_LAT, S_LAT = 4, 5, 6, 7
# realized-acceleration states (12-state variant only)
A_TRAN_LONG, A_ROT_LONG, A_TRAN_LAT, A_ROT_LAT = 8, 9, 10, 11
# input indices
U_ROT_LONG, U_TRAN_LONG, U_ROT_LAT, U_TRAN_LAT = 0, 1, 2, 3

N_STATES_EXPLICIT = 8
N_STATES_IMPLICIT = 12
N_INPUTS = 4

DEFAULT_G = 9.81


class IntegrationDivergedError(RuntimeError):
    """A fixed-step integration produced a non-finite state."""


@dataclass(frozen=True)
class ModelParams:
    """Physical and discretization parameters of the platform model."""

    g: float = DEFAULT_G
    tau_act: float = 0.1  # actuator first-order lag constant [s]
    dt: float = 0.01  # integration step [s]

    def __post_init__(self) -> None:
        if not (self.g > 0.0 and math.isfinite(self.g)):
            raise ValueError(f"g must be positive and finite, got {self.g}")
        if not (self.tau_act > 0.0 and math.isfinite(self.tau_act)):
            raise ValueError(f"tau_act must be positive and finite, got {self.tau_act}")
        if not (self.dt > 0.0 and math.isfinite(self.dt)):
            raise ValueError(f"dt must be positive and finite, got {self.dt}")


def _require_finite(name: str, arr: np.ndarray) -> None:
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries: {arr!r}")


def derivatives_explicit(x: np.ndarray, u: np.ndarray) -> np.ndarray:
    """Right-hand side of the 8-state model: two double-integrator chains per axis."""
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=float)
    if x.shape != (N_STATES_EXPLICIT,):
        raise ValueError(f"expected 8-state vector, got shape {x.shape}")
    if u.shape != (N_INPUTS,):
        raise ValueError(f"expected 4 inputs, got shape {u.shape}")
    _require_finite("state", x)
    _require_finite("input", u)
    dx = np.empty(N_STATES_EXPLICIT)
    dx[OMEGA_LONG] = u[U_ROT_LONG]
    dx[THETA_LONG] = x[OMEGA_LONG]
    dx[V_LONG] = u[U_TRAN_LONG]
    dx[S_LONG] = x[V_LONG]
    dx[OMEGA_LAT] = u[U_ROT_LAT]
    dx[THETA_LAT] = x[OMEGA_LAT]
    dx[V_LAT] = u[U_TRAN_LAT]
    dx[S_LAT] = x[V_LAT]
    return dx


def derivatives_implicit(x: np.ndarray, u_cmd: np.ndarray, params: ModelParams) -> np.ndarray:
    """Right-hand side of the 12-state model with first-order actuator lag."""
    x = np.asarray(x, dtype=float)
    u_cmd = np.asarray(u_cmd, dtype=float)
    if x.shape != (N_STATES_IMPLICIT,):
        raise ValueError(f"expected 12-state vector, got shape {x.shape}")
    if u_cmd.shape != (N_INPUTS,):
        raise ValueError(f"expected 4 inputs, got shape {u_cmd.shape}")
    _require_finite("state", x)
    _require_finite("input", u_cmd)
    tau = params.tau_act
    dx = np.empty(N_STATES_IMPLICIT)
    dx[OMEGA_LONG] = x[A_ROT_LONG]
    dx[THETA_LONG] = x[OMEGA_LONG]
    dx[V_LONG] = x[A_TRAN_LONG]
    dx[S_LONG] = x[V_LONG]
    dx[OMEGA_LAT] = x[A_ROT_LAT]
    dx[THETA_LAT] = x[OMEGA_LAT]
    dx[V_LAT] = x[A_TRAN_LAT]
    dx[S_LAT] = x[V_LAT]
    dx[A_TRAN_LONG] = (u_cmd[U_TRAN_LONG] - x[A_TRAN_LONG]) / tau
    dx[A_ROT_LONG] = (u_cmd[U_ROT_LONG] - x[A_ROT_LONG]) / tau
    dx[A_TRAN_LAT] = (u_cmd[U_TRAN_LAT] - x[A_TRAN_LAT]) / tau
    dx[A_ROT_LAT] = (u_cmd[U_ROT_LAT] - x[A_ROT_LAT]) / tau
    return dx


def gravitational_tilt(theta_long: float, theta_lat: float, g: float = DEFAULT_G) -> tuple[float, float]:
    """Gravity components sensed along the body axes for the given tilt angles."""
    if not (math.isfinite(theta_long) and math.isfinite(theta_lat)):
        raise ValueError("tilt angles must be finite")
    g_long = g * math.sin(theta_long)
    g_lat = -g * math.cos(theta_long) * math.sin(theta_lat)
    return g_long, g_lat


def specific_force(x: np.ndarray, g: float = DEFAULT_G, u: np.ndarray | None = None) -> np.ndarray:
    """Sensed specific force ``[f_long, f_lat]``.

    For the 12-state variant the translational accelerations come from the
    realized-acceleration states; for the 8-state variant they must be
    supplied via the current input vector ``u``.
    """
    x = np.asarray(x, dtype=float)
    if x.shape == (N_STATES_IMPLICIT,):
        a_tran_long = x[A_TRAN_LONG]
        a_tran_lat = x[A_TRAN_LAT]
    elif x.shape == (N_STATES_EXPLICIT,):
        if u is None:
            raise ValueError("8-state variant needs the current input for the translational accelerations")
        u = np.asarray(u, dtype=float)
        a_tran_long = u[U_TRAN_LONG]
        a_tran_lat = u[U_TRAN_LAT]
    else:
        raise ValueError(f"expected 8- or 12-state vector, got shape {x.shape}")
    g_long, g_lat = gravitational_tilt(x[THETA_LONG], x[THETA_LAT], g)
    return np.array([a_tran_long + g_long, a_tran_lat + g_lat])


def integrate_step(x: np.ndarray, u: np.ndarray, params: ModelParams) -> np.ndarray:
    """One classical RK4 step of the variant selected by the state dimension."""
    x = np.asarray(x, dtype=float)
    if x.shape == (N_STATES_IMPLICIT,):
        f = lambda xs: derivatives_implicit(xs, u, params)  # noqa: E731
    else:
        f = lambda xs: derivatives_explicit(xs, u)  # noqa: E731
    h = params.dt
    k1 = f(x)
    k2 = f(x + 0.5 * h * k1)
    k3 = f(x + 0.5 * h * k2)
    k4 = f(x + h * k3)
    x_next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(x_next)):
        raise IntegrationDivergedError(f"non-finite state after step of {h} s")
    return x_next


def implicit_system_matrices(params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
    """Continuous-time ``(A, B)`` of the 12-state model, which is linear."""
    A = np.zeros((N_STATES_IMPLICIT, N_STATES_IMPLICIT))
    B = np.zeros((N_STATES_IMPLICIT, N_INPUTS))
    A[OMEGA_LONG, A_ROT_LONG] = 1.0
    A[THETA_LONG, OMEGA_LONG] = 1.0
    A[V_LONG, A_TRAN_LONG] = 1.0
    A[S_LONG, V_LONG] = 1.0
    A[OMEGA_LAT, A_ROT_LAT] = 1.0
    A[THETA_LAT, OMEGA_LAT] = 1.0
    A[V_LAT, A_TRAN_LAT] = 1.0
    A[S_LAT, V_LAT] = 1.0
    inv_tau = 1.0 / params.tau_act
    for state_idx, input_idx in (
        (A_TRAN_LONG, U_TRAN_LONG),
        (A_ROT_LONG, U_ROT_LONG),
        (A_TRAN_LAT, U_TRAN_LAT),
        (A_ROT_LAT, U_ROT_LAT),
    ):
        A[state_idx, state_idx] = -inv_tau
        B[state_idx, input_idx] = inv_tau
    return A, B


def rk4_discretize(A: np.ndarray, B: np.ndarray, dt: float) -> tuple[np.ndarray, np.ndarray]:
    """Discrete ``(Phi, Gamma)`` of one RK4 step with zero-order-hold input.

    For a linear system the classical RK4 step equals the matrix-polynomial
    truncation of the exponential, so the plant stepped with
    :func:`integrate_step` and a transcription built on these matrices agree
    to machine precision.
    """
    n = A.shape[0]
    Ah = A * dt
    Phi = np.eye(n)
    term = np.eye(n)
    for i in range(1, 5):
        term = term @ Ah / i
        Phi = Phi + term
    # Gamma = (I*dt + A*dt^2/2 + A^2*dt^3/6 + A^3*dt^4/24) B
    Gam = np.eye(n) * dt
    term = np.eye(n) * dt
    for i in range(2, 5):
        term = term @ Ah / i
        Gam = Gam + term
    return Phi, Gam @ B


def state_12(
    omega_long: float = 0.0,
    theta_long: float = 0.0,
    v_long: float = 0.0,
    s_long: float = 0.0,
    omega_lat: float = 0.0,
    theta_lat: float = 0.0,
    v_lat: float = 0.0,
    s_lat: float = 0.0,
    a_tran_long: float = 0.0,
    a_rot_long: float = 0.0,
    a_tran_lat: float = 0.0,
    a_rot_lat: float = 0.0,
) -> np.ndarray:
    """Keyword constructor for a 12-state vector (handy in tests and configs)."""
    return np.array(
        [omega_long, theta_long, v_long, s_long,
         omega_lat, theta_lat, v_lat, s_lat,
         a_tran_long, a_rot_long, a_tran_lat, a_rot_lat]
    )
