"""A small dense linear-programming solver with verifiable outcomes.

The solver is a textbook two-phase tableau simplex specialised to the
sizes this package needs (hundreds of rows).  Pivoting uses Bland's
rule throughout, which trades speed for a guarantee against cycling.

Every outcome can be re-checked from the original data:

* ``optimal`` carries the primal point,
* ``infeasible`` carries a Farkas vector y >= 0 with yA = 0 and yb < 0
  over the canonical ``Ax <= b`` form,
* ``unbounded`` carries nothing (the statuses are mutually exclusive).

Problems are stated as: maximize c.x subject to rows (a, rel, b) with
rel in {"<=", ">=", "="} and optional per-variable bounds.  Variables
are otherwise free.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

FEAS_TOL = 1e-9
PIVOT_TOL = 1e-9
VERIFY_TOL = 1e-7

RELATIONS = ("<=", ">=", "=")


class LpNumericalError(RuntimeError):
    """Raised when the simplex hits its iteration cap or a pivot degenerates."""


@dataclass(frozen=True)
class LpProblem:
    objective: tuple[float, ...]
    constraints: tuple[tuple[tuple[float, ...], str, float], ...]
    bounds: tuple[tuple[float | None, float | None], ...] | None = None

    @staticmethod
    def of(
        objective: Sequence[float],
        constraints: Sequence[tuple[Sequence[float], str, float]],
        bounds: Sequence[tuple[float | None, float | None]] | None = None,
    ) -> "LpProblem":
        obj = tuple(float(v) for v in objective)
        rows = []
        for coeffs, rel, rhs in constraints:
            if rel not in RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
            if len(coeffs) != len(obj):
                raise ValueError("constraint length does not match objective length")
            rows.append((tuple(float(v) for v in coeffs), rel, float(rhs)))
        bnds = None
        if bounds is not None:
            if len(bounds) != len(obj):
                raise ValueError("bounds length does not match objective length")
            bnds = tuple((lo, hi) for lo, hi in bounds)
        return LpProblem(obj, tuple(rows), bnds)


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: float | None
    point: np.ndarray | None
    certificate: np.ndarray | None
    iterations: int


def canonical_rows(problem: LpProblem) -> tuple[np.ndarray, np.ndarray]:
    """Expand constraints and bounds into the canonical form A x <= b."""
    nv = len(problem.objective)
    rows = []
    rhs = []
    for coeffs, rel, b in problem.constraints:
        a = np.asarray(coeffs, dtype=float)
        if rel in ("<=", "="):
            rows.append(a)
            rhs.append(b)
        if rel in (">=", "="):
            rows.append(-a)
            rhs.append(-b)
    if problem.bounds is not None:
        for j, (lo, hi) in enumerate(problem.bounds):
            e = np.zeros(nv)
            if lo is not None:
                e_lo = e.copy()
                e_lo[j] = -1.0
                rows.append(e_lo)
                rhs.append(-float(lo))
            if hi is not None:
                e_hi = e.copy()
                e_hi[j] = 1.0
                rows.append(e_hi)
                rhs.append(float(hi))
    if not rows:
        return np.zeros((0, nv)), np.zeros(0)
    return np.vstack(rows), np.asarray(rhs, dtype=float)


def _pivot(tab: np.ndarray, obj: np.ndarray, basis: np.ndarray, row: int, col: int) -> None:
    piv = tab[row, col]
    if abs(piv) <= PIVOT_TOL:
        raise LpNumericalError("degenerate pivot element")
    tab[row] /= piv
    factor = tab[:, col].copy()
    factor[row] = 0.0
    tab -= np.outer(factor, tab[row])
    obj -= obj[col] * tab[row]
    basis[row] = col


def _bland_enter(obj: np.ndarray, allowed: int) -> int | None:
    for j in range(allowed):
        if obj[j] > PIVOT_TOL:
            return j
    return None


def _bland_leave(tab: np.ndarray, basis: np.ndarray, col: int) -> int | None:
    best_row = None
    best_ratio = None
    for i in range(tab.shape[0]):
        a = tab[i, col]
        if a > PIVOT_TOL:
            ratio = tab[i, -1] / a
            if (
                best_ratio is None
                or ratio < best_ratio - 1e-12
                or (abs(ratio - best_ratio) <= 1e-12 and basis[i] < basis[best_row])
            ):
                best_row, best_ratio = i, ratio
    return best_row


def solve_lp(problem: LpProblem, max_iter: int = 50000) -> LpResult:
    """Two-phase simplex; see the module docstring for the contract."""
    a_rows, b_vec = canonical_rows(problem)
    m, nv = a_rows.shape
    c = np.asarray(problem.objective, dtype=float)
    iterations = 0

    if m == 0:
        if np.any(c != 0.0):
            return LpResult("unbounded", None, None, None, 0)
        return LpResult("optimal", 0.0, np.zeros(nv), None, 0)

    flip = np.where(b_vec < 0, -1.0, 1.0)
    a_n = a_rows * flip[:, None]
    b_n = b_vec * flip

    # columns: x+ (nv) | x- (nv) | slack (m) | artificial (m) | rhs
    n_struct = 2 * nv + m
    n_cols = n_struct + m
    tab = np.zeros((m, n_cols + 1))
    tab[:, :nv] = a_n
    tab[:, nv : 2 * nv] = -a_n
    tab[:, 2 * nv : n_struct] = np.diag(flip)
    tab[:, n_struct : n_struct + m] = np.eye(m)
    tab[:, -1] = b_n
    basis = np.arange(n_struct, n_struct + m)

    # phase 1: maximize -(sum of artificials); initial basis = artificials
    obj = np.zeros(n_cols + 1)
    obj[:n_cols] = tab[:, :n_cols].sum(axis=0)
    obj[n_struct : n_struct + m] = 0.0  # reduced cost of basic columns
    obj[-1] = b_n.sum()  # equals -W for W = -(sum b) at the start

    while True:
        col = _bland_enter(obj, n_cols)
        if col is None:
            break
        row = _bland_leave(tab, basis, col)
        if row is None:
            raise LpNumericalError("phase-1 objective unbounded (cannot happen)")
        _pivot(tab, obj, basis, row, col)
        iterations += 1
        if iterations > max_iter:
            raise LpNumericalError(f"iteration cap {max_iter} exceeded in phase 1")

    w_star = -obj[-1]
    if w_star < -FEAS_TOL:
        # Farkas vector from the phase-1 multipliers: pi_i = -1 - r(artificial_i)
        pi = -1.0 - obj[n_struct : n_struct + m]
        y = flip * pi
        y = np.where(np.abs(y) < 1e-14, 0.0, y)
        scale = np.abs(y).max()
        if scale > 0:
            y = y / scale
        return LpResult("infeasible", None, None, y, iterations)

    # drive basic artificials out (or drop redundant rows)
    keep = np.ones(m, dtype=bool)
    for i in range(m):
        if basis[i] >= n_struct:
            piv_col = None
            for j in range(n_struct):
                if abs(tab[i, j]) > 1e-8:
                    piv_col = j
                    break
            if piv_col is None:
                keep[i] = False
            else:
                _pivot(tab, obj, basis, i, piv_col)
                iterations += 1
    if not keep.all():
        tab = tab[keep]
        basis = basis[keep]

    # phase 2: maximize the real objective over the structural columns
    c_full = np.zeros(n_cols)
    c_full[:nv] = c
    c_full[nv : 2 * nv] = -c
    cb = c_full[basis]
    obj = np.empty(n_cols + 1)
    obj[:n_cols] = c_full - cb @ tab[:, :n_cols]
    obj[-1] = -(cb @ tab[:, -1])
    obj[n_struct:n_cols] = -np.inf  # artificials may never re-enter

    while True:
        col = _bland_enter(obj, n_struct)
        if col is None:
            break
        row = _bland_leave(tab, basis, col)
        if row is None:
            return LpResult("unbounded", None, None, None, iterations)
        _pivot(tab, obj, basis, row, col)
        iterations += 1
        if iterations > max_iter:
            raise LpNumericalError(f"iteration cap {max_iter} exceeded in phase 2")

    z = np.zeros(n_cols)
    z[basis] = tab[:, -1]
    point = z[:nv] - z[nv : 2 * nv]
    value = float(c @ point)
    return LpResult("optimal", value, point, None, iterations)


def verify_point(problem: LpProblem, point: np.ndarray, tol: float = VERIFY_TOL) -> bool:
    """Check a claimed-feasible point against every canonical row."""
    a_rows, b_vec = canonical_rows(problem)
    if a_rows.shape[0] == 0:
        return True
    lhs = a_rows @ point
    slack = lhs - b_vec
    return bool(np.all(slack <= tol * np.maximum(1.0, np.abs(b_vec))))


def verify_infeasibility_certificate(
    problem: LpProblem, y: np.ndarray, tol: float = VERIFY_TOL
) -> bool:
    """Check a Farkas vector: y >= 0, yA ~ 0, and yb strictly negative."""
    a_rows, b_vec = canonical_rows(problem)
    if a_rows.shape[0] == 0 or y is None or len(y) != a_rows.shape[0]:
        return False
    y = np.asarray(y, dtype=float)
    scale = np.abs(y).max()
    if scale <= 0:
        return False
    y = y / scale
    if y.min() < -tol:
        return False
    combo = y @ a_rows
    data_scale = max(1.0, float(np.abs(a_rows).max()))
    if np.abs(combo).max() > tol * data_scale:
        return False
    return bool(y @ b_vec < -tol * max(1.0, float(np.abs(b_vec).max())))
