"""Dense active-set solver for strictly convex inequality-constrained QPs.

Solves ``min 0.5 x'Hx + g'x  s.t.  A x <= b`` with a dual active-set scheme
(Goldfarb–Idnani iteration order, Schur-complement linear algebra): start at
the unconstrained minimizer, repeatedly add the most violated constraint,
dropping active constraints whose multiplier would turn negative. Every
add/drop counts as one pivot. Pivoting is deterministic: most violated row
first, lowest index on ties, warm-start rows given priority.

The solver keeps one Cholesky factor of H for the whole solve and grows /
shrinks the active-set Schur complement by bordering, so each pivot costs
O(n^2 + m n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
PIVOT_LIMIT = "pivot-limit"


@dataclass
class QpResult:
    x: np.ndarray
    lam: np.ndarray  # multipliers per constraint row (0 for inactive)
    active: tuple[int, ...]
    pivots: int
    status: str

    @property
    def ok(self) -> bool:
        return self.status == OPTIMAL


def solve_qp(
    H: np.ndarray,
    g: np.ndarray,
    A: np.ndarray | None = None,
    b: np.ndarray | None = None,
    warm: tuple[int, ...] = (),
    feas_tol: float = 1e-9,
    max_pivots: int | None = None,
) -> QpResult:
    """Solve the QP; ``warm`` orders constraint indices to try activating first."""
    H = np.asarray(H, dtype=float)
    g = np.asarray(g, dtype=float)
    n = g.shape[0]
    chol = cho_factor(H, lower=True, check_finite=False)

    x = -cho_solve(chol, g, check_finite=False)
    if A is None or len(A) == 0:
        return QpResult(x, np.zeros(0), (), 0, OPTIMAL)

    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    m = A.shape[0]
    # normalize rows once so tolerances are scale-free
    scale = np.linalg.norm(A, axis=1)
    zero_rows = scale < 1e-14
    if np.any(zero_rows & (b < -feas_tol)):
        return QpResult(x, np.zeros(m), (), 0, INFEASIBLE)
    scale_safe = np.where(zero_rows, 1.0, scale)
    An = A / scale_safe[:, None]
    bn = b / scale_safe
    bn = np.where(zero_rows, np.inf, bn)  # vacuous rows never activate

    if max_pivots is None:
        max_pivots = 50 * (n + m) + 100

    active: list[int] = []
    lam: list[float] = []
    V = np.zeros((n, 0))  # columns H^-1 a_i for i in active
    K = np.zeros((0, 0))  # An[active] @ V
    pivots = 0
    warm_queue = [int(i) for i in warm if 0 <= int(i) < m]

    def pick_violated() -> int | None:
        s = An @ x - bn
        while warm_queue:
            i = warm_queue.pop(0)
            if s[i] > feas_tol:
                return i
        worst = int(np.argmax(s))
        return worst if s[worst] > feas_tol else None

    while True:
        p = pick_violated()
        if p is None:
            break
        a_p = An[p]
        v_p = cho_solve(chol, a_p, check_finite=False)
        lam_p = 0.0
        while True:
            if pivots >= max_pivots:
                return QpResult(x, _expand_lam(lam + [lam_p], active + [p], m, scale_safe), tuple(active), pivots, PIVOT_LIMIT)
            q = len(active)
            if q:
                u = An[active] @ v_p
                try:
                    r = np.linalg.solve(K, u)
                except np.linalg.LinAlgError:
                    r = np.linalg.lstsq(K, u, rcond=None)[0]
                z = v_p - V @ r
            else:
                r = np.zeros(0)
                z = v_p
            denom = float(a_p @ z)
            viol = float(a_p @ x - bn[p])
            t_full = viol / denom if denom > 1e-13 else np.inf
            # dual blocking step
            t_block = np.inf
            blocker = -1
            for j in range(q):
                if r[j] > 1e-13:
                    tj = lam[j] / r[j]
                    if tj < t_block - 1e-15:
                        t_block, blocker = tj, j
            if not np.isfinite(t_full) and not np.isfinite(t_block):
                return QpResult(x, np.zeros(m), tuple(active), pivots, INFEASIBLE)
            t = min(t_full, t_block)
            if t > 0.0:
                x = x - t * z
                for j in range(q):
                    lam[j] -= t * r[j]
                lam_p += t
            if t_full <= t_block:
                # constraint p reaches equality: activate it
                active.append(p)
                lam.append(lam_p)
                corner = float(a_p @ v_p)
                if q:
                    K = np.block([[K, u[:, None]], [u[None, :], np.array([[corner]])]])
                else:
                    K = np.array([[corner]])
                V = np.hstack([V, v_p[:, None]])
                pivots += 1
                break
            # drop the blocking constraint and retry p
            del active[blocker], lam[blocker]
            V = np.delete(V, blocker, axis=1)
            K = np.delete(np.delete(K, blocker, axis=0), blocker, axis=1)
            pivots += 1

    # polish: re-solve the KKT system of the final active set in one shot,
    # removing drift accumulated over incremental steps
    if active:
        rows = An[active]
        Kf = rows @ cho_solve(chol, rows.T, check_finite=False)
        try:
            lam_f = np.linalg.solve(Kf, -(bn[active] + rows @ cho_solve(chol, g, check_finite=False)))
        except np.linalg.LinAlgError:
            lam_f = np.array(lam)
        if np.all(lam_f > -1e-8):
            x = -cho_solve(chol, g + rows.T @ lam_f, check_finite=False)
            lam = list(lam_f)

    return QpResult(x, _expand_lam(lam, active, m, scale_safe), tuple(active), pivots, OPTIMAL)


def _expand_lam(lam: list[float], active: list[int], m: int, scale: np.ndarray) -> np.ndarray:
    """Scatter active multipliers to full length, undoing row normalization."""
    full = np.zeros(m)
    for value, idx in zip(lam, active):
        full[idx] = value / scale[idx]
    return full


def solve_qp_elastic(
    H: np.ndarray,
    g: np.ndarray,
    A: np.ndarray,
    b: np.ndarray,
    elastic_rows: np.ndarray,
    penalty: float = 1e4,
    **kwargs,
) -> tuple[QpResult, np.ndarray]:
    """Re-solve with nonnegative slacks on the given rows (L1 penalty).

    Used as the relaxation fallback when the plain QP is infeasible. Returns
    the result in the original variables plus the slack values.
    """
    elastic_rows = np.asarray(elastic_rows, dtype=int)
    n = g.shape[0]
    k = elastic_rows.shape[0]
    H_aug = np.zeros((n + k, n + k))
    H_aug[:n, :n] = H
    H_aug[n:, n:] = 1e-6 * np.eye(k)  # tiny curvature keeps the QP strictly convex
    g_aug = np.concatenate([g, np.full(k, penalty)])
    m = A.shape[0]
    A_aug = np.zeros((m + k, n + k))
    A_aug[:m, :n] = A
    for j, row in enumerate(elastic_rows):
        A_aug[row, n + j] = -1.0  # row' x - slack <= b
        A_aug[m + j, n + j] = -1.0  # slack >= 0
    b_aug = np.concatenate([b, np.zeros(k)])
    res = solve_qp(H_aug, g_aug, A_aug, b_aug, **kwargs)
    slack = res.x[n:] if res.ok else np.zeros(k)
    trimmed = QpResult(res.x[:n], res.lam[:m], res.active, res.pivots, res.status)
    return trimmed, slack
