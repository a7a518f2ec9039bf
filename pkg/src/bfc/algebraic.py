"""Polynomial-degree measures: exact, over GF(2), and approximate.

The exact degree comes from the integer Mobius transform over the
subset lattice (the unique multilinear expansion on {0,1}^n), the GF(2)
degree from the same transform with XOR in place of subtraction, and
the approximate degree from a sequence of feasibility linear programs
whose verdicts are re-checked against their certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bits, lp
from .tables import TruthTable

DEGREE_MAX_ARITY = 20
APPROX_DEGREE_MAX_ARITY = 8
DEFAULT_EPSILON = 1.0 / 3.0
LP_CHECK_TOL = 1e-7


@dataclass(frozen=True)
class MultilinearExpansion:
    """Integer coefficients of the multilinear polynomial agreeing with f."""

    arity: int
    coefficients: tuple[tuple[int, int], ...]  # (monomial mask, coefficient)

    def coefficient(self, mask: int) -> int:
        for m, c in self.coefficients:
            if m == mask:
                return c
        return 0

    def evaluate(self, x: int) -> int:
        return sum(c for m, c in self.coefficients if m & x == m)


def mobius_coefficients(f: TruthTable) -> np.ndarray:
    """All 2^n multilinear coefficients as exact int64 values."""
    if f.arity > DEGREE_MAX_ARITY:
        raise ValueError(f"degree supports arity <= {DEGREE_MAX_ARITY}")
    a = f.to_bit_array().astype(np.int64)
    for i in range(f.arity):
        a = a.reshape(-1, 2, 1 << i)
        a[:, 1, :] -= a[:, 0, :]
        a = a.reshape(-1)
    return a


def multilinear_expansion(f: TruthTable) -> MultilinearExpansion:
    coeffs = mobius_coefficients(f)
    nz = [(int(m), int(c)) for m, c in enumerate(coeffs) if c != 0]
    return MultilinearExpansion(f.arity, tuple(nz))


def degree(f: TruthTable) -> int:
    """deg(f): top monomial size of the exact multilinear expansion."""
    coeffs = mobius_coefficients(f)
    nz = np.nonzero(coeffs)[0]
    if nz.size == 0:
        return 0
    return int(bits.popcount_array(nz).max())


def degree_gf2(f: TruthTable) -> int:
    """deg2(f): degree of the polynomial over GF(2)."""
    n, t = f.arity, f.table
    if n > DEGREE_MAX_ARITY:
        raise ValueError(f"degree supports arity <= {DEGREE_MAX_ARITY}")
    for i in range(n):
        t ^= (t & bits.axis_mask(n, i)) << (1 << i)
    if t == 0:
        return 0
    nz = np.nonzero(bits.to_bit_array(t, n))[0]
    return int(bits.popcount_array(nz).max())


def gf2_coefficients(f: TruthTable) -> np.ndarray:
    """GF(2) monomial indicator vector (uint8 of length 2^n)."""
    n, t = f.arity, f.table
    for i in range(n):
        t ^= (t & bits.axis_mask(n, i)) << (1 << i)
    return bits.to_bit_array(t, n)


def _monomial_masks(n: int, max_degree: int) -> list[int]:
    masks = [m for m in range(1 << n) if m.bit_count() <= max_degree]
    masks.sort(key=lambda m: (m.bit_count(), m))
    return masks


def approximation_problem(f: TruthTable, degree_cap: int, epsilon: float) -> lp.LpProblem:
    """Feasibility LP: is there a degree <= degree_cap polynomial q with
    q(x) in [0, eps] on f^-1(0) and in [1-eps, 1] on f^-1(1)?

    Over 0/1 inputs a monomial is 1 exactly when its support lies inside
    the input, so the constraint matrix is the subset-lattice indicator.
    """
    masks = _monomial_masks(f.arity, degree_cap)
    ncols = len(masks)
    constraints = []
    for x in range(f.size):
        row = tuple(1.0 if m & x == m else 0.0 for m in masks)
        if f.value(x) == 0:
            constraints.append((row, ">=", 0.0))
            constraints.append((row, "<=", epsilon))
        else:
            constraints.append((row, ">=", 1.0 - epsilon))
            constraints.append((row, "<=", 1.0))
    return lp.LpProblem.of([0.0] * ncols, constraints)


def approximate_degree(f: TruthTable, epsilon: float = DEFAULT_EPSILON) -> int:
    """adeg(f): least degree admitting an epsilon-approximation.

    Every LP verdict is validated before it is trusted: a feasible
    degree must come with a point satisfying all constraints within
    1e-7, an infeasible one with a Farkas certificate that re-checks.
    """
    if f.arity > APPROX_DEGREE_MAX_ARITY:
        raise ValueError(f"approximate degree supports arity <= {APPROX_DEGREE_MAX_ARITY}")
    if not 0.0 < epsilon < 0.5:
        raise ValueError("epsilon must lie strictly between 0 and 1/2")
    for d in range(f.arity + 1):
        problem = approximation_problem(f, d, epsilon)
        result = lp.solve_lp(problem)
        if result.status == "optimal":
            if not lp.verify_point(problem, result.point, LP_CHECK_TOL):
                raise lp.LpNumericalError(
                    f"feasible verdict at degree {d} failed the point re-check"
                )
            return d
        if result.status == "infeasible":
            if not lp.verify_infeasibility_certificate(
                problem, result.certificate, LP_CHECK_TOL
            ):
                raise lp.LpNumericalError(
                    f"infeasible verdict at degree {d} failed the certificate re-check"
                )
            continue
        raise lp.LpNumericalError(f"unexpected LP status {result.status!r}")
    raise lp.LpNumericalError("no feasible degree up to the arity (cannot happen)")
