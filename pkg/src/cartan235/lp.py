"""Nonnegative-combination feasibility by a phase-one simplex.

Decides whether target = sum_i lambda_i * column_i has a solution with
all lambda_i >= 0, returning either the coefficients or the dual row
vector that certifies infeasibility.  Bland's rule makes the pivot
sequence deterministic and cycle-free; the tableau is tiny (three rows),
so the dense classical method is adequate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure

__all__ = ["FeasibilityResult", "nonneg_combination"]

_PIVOT_TOL = 1e-11
_MAX_ITER = 10_000


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    coefficients: np.ndarray | None  # lambda >= 0 with S @ lambda = t
    dual: np.ndarray | None          # y with y.t > 0 >= y.S_i when infeasible
    residual: float                  # optimal artificial mass


def nonneg_combination(S: np.ndarray, t: np.ndarray,
                       feas_tol: float = 1e-12) -> FeasibilityResult:
    """Solve min 1.a  s.t.  S lam + D a = t, lam >= 0, a >= 0.

    S is (3, n).  Feasible when the optimum is at most feas_tol.
    """
    S = np.asarray(S, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    if S.ndim != 2 or S.shape[0] != 3 or t.shape != (3,):
        raise ValueError("need S of shape (3, n) and t of shape (3,)")
    n = S.shape[1]

    sign = np.where(t < 0.0, -1.0, 1.0)
    A = np.hstack([S * sign[:, None], np.eye(3)])
    rhs = t * sign
    cost = np.concatenate([np.zeros(n), np.ones(3)])
    basis = [n, n + 1, n + 2]
    T = A.copy()

    for _ in range(_MAX_ITER):
        c_b = cost[basis]
        reduced = cost - c_b @ T
        entering = -1
        for j in range(n + 3):
            if reduced[j] < -_PIVOT_TOL:
                entering = j
                break
        if entering < 0:
            break
        ratios = [
            (rhs[i] / T[i, entering], basis[i], i)
            for i in range(3)
            if T[i, entering] > _PIVOT_TOL
        ]
        if not ratios:
            raise NumericalFailure("unbounded phase-one problem")
        best = min(r for r, _, _ in ratios)
        # Bland tie-break: leave the smallest basis variable index
        row = min(
            (b, i) for r, b, i in ratios if r <= best + 1e-15 * (1 + abs(best))
        )[1]
        pivot = T[row, entering]
        T[row] /= pivot
        rhs[row] /= pivot
        for i in range(3):
            if i != row and T[i, entering] != 0.0:
                rhs[i] -= T[i, entering] * rhs[row]
                T[i] -= T[i, entering] * T[row]
        basis[row] = entering
    else:
        raise NumericalFailure("phase-one simplex did not terminate")

    residual = float(cost[basis] @ rhs)
    if residual <= feas_tol:
        lam = np.zeros(n)
        for i, b in enumerate(basis):
            if b < n:
                lam[b] = max(rhs[i], 0.0)
        return FeasibilityResult(True, lam, None, residual)
    # dual from the artificial columns: B^{-1} sits under them
    y = cost[basis] @ T[:, n:]
    return FeasibilityResult(False, None, y * sign, residual)
