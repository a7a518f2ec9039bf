"""Spectral sensitivity: the operator norm of the sensitivity graph.

The sensitivity graph G_f has the (defined) inputs as vertices and the
Hamming-distance-1 pairs on which f differs as edges.  Its adjacency
norm lambda(f) sits between sensitivity-type and degree-type measures;
this module computes it, builds the signed hypercube whose eigenvectors
certify deg(f) <= lambda(f)^2, and extracts those certifying vectors.

Eigenvalues come from a dense symmetric solve when the graph has at
most 4096 vertices and from power iteration on the squared bipartite
operator (matrix-free) above that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bits
from .algebraic import degree, mobius_coefficients
from .tables import PartialTruthTable, Restriction, TruthTable, restrict

DENSE_MAX_VERTICES = 4096
SIGNED_HYPERCUBE_MAX_N = 12
ITER_CAP = 100_000
ITER_REL_TOL = 1e-10
RESIDUAL_TARGET = 1e-9
KERNEL_TOL = 1e-10
POWER_SEED = 744309
WITNESS_SLACK = 1e-9


class SpectralConvergenceError(RuntimeError):
    """Power iteration missed its residual target within the cap."""

    def __init__(self, achieved_value: float, achieved_residual: float):
        self.achieved_value = achieved_value
        self.achieved_residual = achieved_residual
        super().__init__(
            f"no convergence: value {achieved_value:.12g}, "
            f"residual {achieved_residual:.3g}"
        )


@dataclass(frozen=True)
class SpectralResult:
    """Norm, a nonnegative unit top eigenvector (domain-indexed), and the
    verified residual ||A v - value * v||."""

    value: float
    vector: np.ndarray
    residual: float


def _domain_parts(f: TruthTable | PartialTruthTable) -> tuple[int, int, int]:
    """(arity, table bits, domain bits)."""
    if isinstance(f, PartialTruthTable):
        return f.arity, f.table, f.domain
    return f.arity, f.table, bits.table_mask(f.arity)


def _edge_masks(n: int, t: int, dom: int) -> list[int]:
    """Per direction: bitmask of x such that (x, x^e_i) is an edge."""
    out = []
    for i in range(n):
        pair_ok = dom & bits.flip_axis(dom, n, i)
        out.append((t ^ bits.flip_axis(t, n, i)) & pair_ok)
    return out


class SensitivityGraph:
    """Adjacency structure of G_f over the defined inputs."""

    def __init__(self, f: TruthTable | PartialTruthTable):
        self.arity, self._table, self._domain = _domain_parts(f)
        self._edges = _edge_masks(self.arity, self._table, self._domain)
        self.domain_inputs = [
            x for x in range(1 << self.arity) if (self._domain >> x) & 1
        ]
        self._position = {x: k for k, x in enumerate(self.domain_inputs)}

    def is_edge(self, x: int, y: int) -> bool:
        d = x ^ y
        if d == 0 or d & (d - 1):
            return False
        return bool((self._edges[d.bit_length() - 1] >> x) & 1)

    def degree_of(self, x: int) -> int:
        return sum((m >> x) & 1 for m in self._edges)

    def max_degree(self) -> int:
        if not self.domain_inputs:
            return 0
        return max(self.degree_of(x) for x in self.domain_inputs)

    def edge_count(self) -> int:
        return sum(bin(m).count("1") for m in self._edges) // 2

    def sides(self) -> tuple[list[int], list[int]]:
        """Defined inputs split by function value (zeros, ones)."""
        zeros = [x for x in self.domain_inputs if not (self._table >> x) & 1]
        ones = [x for x in self.domain_inputs if (self._table >> x) & 1]
        return zeros, ones

    def adjacency(self) -> np.ndarray:
        """Dense adjacency over the defined inputs, in ascending order."""
        m = len(self.domain_inputs)
        if m > DENSE_MAX_VERTICES:
            raise ValueError(f"dense adjacency capped at {DENSE_MAX_VERTICES} vertices")
        a = np.zeros((m, m))
        for i, mask in enumerate(self._edges):
            xs = np.nonzero(bits.to_bit_array(mask, self.arity))[0]
            for x in xs:
                y = int(x) ^ (1 << i)
                a[self._position[int(x)], self._position[y]] = 1.0
        return a


def _axis_swap(u: np.ndarray, axis: int) -> np.ndarray:
    """u[x ^ (1 << axis)] for every x."""
    return u.reshape(-1, 2, 1 << axis)[:, ::-1, :].reshape(u.shape)


def _dense_spectral(graph: SensitivityGraph) -> SpectralResult:
    a = graph.adjacency()
    if a.shape[0] == 0:
        return SpectralResult(0.0, np.zeros(0), 0.0)
    w, vecs = np.linalg.eigh(a)
    value = float(w[-1])
    v = np.abs(vecs[:, -1])
    nrm = float(np.linalg.norm(v))
    if nrm > 0:
        v = v / nrm
    residual = float(np.linalg.norm(a @ v - value * v))
    return SpectralResult(value, v, residual)


def _iterative_spectral(n: int, t: int, dom: int) -> SpectralResult:
    size = 1 << n
    edge_bits = [
        bits.to_bit_array(m, n).astype(np.float64) for m in _edge_masks(n, t, dom)
    ]
    dom_arr = bits.to_bit_array(dom, n).astype(bool)
    val_arr = bits.to_bit_array(t, n).astype(bool)

    def matvec(u: np.ndarray) -> np.ndarray:
        y = np.zeros_like(u)
        for i, eb in enumerate(edge_bits):
            y += _axis_swap(u, i) * eb
        return y

    if not any(eb.any() for eb in edge_bits):
        m = int(dom_arr.sum())
        vec = np.full(m, 1.0 / math.sqrt(m)) if m else np.zeros(0)
        return SpectralResult(0.0, vec, 0.0)

    zeros_side = dom_arr & ~val_arr
    ones_side = dom_arr & val_arr
    side = zeros_side if 0 < zeros_side.sum() <= ones_side.sum() else ones_side
    if not side.any():
        side = zeros_side if zeros_side.any() else ones_side

    rng = np.random.default_rng(POWER_SEED)
    u = rng.random(size) + 0.5
    u *= side
    u /= np.linalg.norm(u)

    value = 0.0
    residual = math.inf
    for _ in range(ITER_CAP):
        w = matvec(u)
        z = matvec(w)
        nw = float(np.linalg.norm(w))
        if nw == 0.0:  # start vector missed every edge: re-seed on the side
            u = np.where(side, 1.0, 0.0)
            u /= np.linalg.norm(u)
            continue
        new_value = nw  # ||Au|| with ||u|| = 1
        uhat = u
        what = w / nw
        vec = (uhat + what) / math.sqrt(2.0)
        avec = (w + z / nw) / math.sqrt(2.0)
        residual = float(np.linalg.norm(avec - new_value * vec))
        converged = (
            abs(new_value - value) <= ITER_REL_TOL * max(1.0, new_value)
            and residual <= RESIDUAL_TARGET * max(1.0, new_value)
        )
        value = new_value
        if converged:
            out = vec[dom_arr]
            nrm = float(np.linalg.norm(out))
            return SpectralResult(value, np.abs(out) / nrm, residual)
        nz = float(np.linalg.norm(z))
        if nz == 0.0:
            u = np.where(side, 1.0, 0.0)
            u /= np.linalg.norm(u)
            continue
        u = z / nz
    raise SpectralConvergenceError(value, residual)


def spectral_sensitivity(
    f: TruthTable | PartialTruthTable, method: str = "auto"
) -> SpectralResult:
    """lambda(f) = ||A_{G_f}|| with a certifying eigenvector.

    ``method`` is "auto", "dense", or "iterative"; auto switches to the
    matrix-free path above 4096 defined inputs.
    """
    n, t, dom = _domain_parts(f)
    defined = dom.bit_count()
    if method == "auto":
        method = "dense" if defined <= DENSE_MAX_VERTICES else "iterative"
    if method == "dense":
        return _dense_spectral(SensitivityGraph(f))
    if method == "iterative":
        return _iterative_spectral(n, t, dom)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class SignedHypercube:
    """The recursive +/-1 signing of the n-cube whose square is n*I."""

    n: int
    entries: np.ndarray  # (2^n, 2^n) int32


def build_signed_hypercube(n: int) -> SignedHypercube:
    if not 0 <= n <= SIGNED_HYPERCUBE_MAX_N:
        raise ValueError(f"signed hypercube supports n <= {SIGNED_HYPERCUBE_MAX_N}")
    b = np.zeros((1, 1), dtype=np.int32)
    for _ in range(n):
        size = b.shape[0]
        eye = np.eye(size, dtype=np.int32)
        b = np.block([[b, eye], [eye, -b]])
    return SignedHypercube(n, b)


@dataclass(frozen=True)
class SigningReport:
    n: int
    square_is_n_identity: bool
    trace_is_zero: bool
    support_is_hypercube: bool
    offending_entry: tuple[int, int] | None
    plus_eigenspace_dim: int

    @property
    def ok(self) -> bool:
        return self.square_is_n_identity and self.trace_is_zero and self.support_is_hypercube


def verify_signing(h: SignedHypercube) -> SigningReport:
    """Exact integer checks: B^2 = n I, trace 0, support = cube edges.

    B^2 = n I together with trace 0 forces eigenvalues +/-sqrt(n) with
    multiplicity 2^(n-1) each, so the eigenspace dimension is reported
    without any floating-point eigendecomposition.
    """
    b = h.entries
    n = h.n
    size = 1 << n
    square = b.astype(np.int64) @ b.astype(np.int64)
    target = n * np.eye(size, dtype=np.int64)
    square_ok = bool(np.array_equal(square, target))
    trace_ok = bool(b.trace() == 0)
    idx = np.arange(size)
    dist1 = bits.popcount_array(idx[:, None] ^ idx[None, :]) == 1
    support_ok = bool(np.array_equal(np.abs(b) != 0, dist1))
    offending = None
    if not square_ok:
        bad = np.argwhere(square != target)
        offending = (int(bad[0][0]), int(bad[0][1]))
    elif not support_ok:
        bad = np.argwhere((np.abs(b) != 0) != dist1)
        offending = (int(bad[0][0]), int(bad[0][1]))
    return SigningReport(
        n=n,
        square_is_n_identity=square_ok,
        trace_is_zero=trace_ok,
        support_is_hypercube=support_ok,
        offending_entry=offending,
        plus_eigenspace_dim=size // 2 if n >= 1 else 1,
    )


def _kernel_vector(rows: np.ndarray, tol: float = KERNEL_TOL) -> np.ndarray:
    """Some c != 0 with rows @ c = 0, via Gauss-Jordan with partial pivoting.

    Requires strictly fewer independent rows than columns.
    """
    a = np.array(rows, dtype=float)
    m, d = a.shape
    pivots: list[tuple[int, int]] = []
    r = 0
    for col in range(d):
        if r >= m:
            break
        piv = r + int(np.argmax(np.abs(a[r:, col])))
        if abs(a[piv, col]) <= tol:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] /= a[r, col]
        for i in range(m):
            if i != r and a[i, col] != 0.0:
                a[i] -= a[i, col] * a[r]
        pivots.append((r, col))
        r += 1
    pivot_cols = {c for _, c in pivots}
    free = next((c for c in range(d) if c not in pivot_cols), None)
    if free is None:
        raise ValueError("matrix has full column rank; no kernel vector")
    c = np.zeros(d)
    c[free] = 1.0
    for row, col in pivots:
        c[col] = -a[row, free]
    return c


@dataclass(frozen=True)
class DegreeWitness:
    """A nonnegative vector certifying lambda(f) >= sqrt(arity)."""

    vector: np.ndarray
    ratio: float
    majority_size: int
    minority_size: int


def full_degree_witness(f: TruthTable) -> DegreeWitness:
    """For f of full degree, a vector v >= 0 with ||A_f v|| >= sqrt(n) ||v||.

    The inputs split by agreement with parity; full degree forces the
    split to be unbalanced.  Inside the larger side every cube edge is
    an edge of G_f, so a +sqrt(n) eigenvector of the signed hypercube
    that vanishes on the smaller side certifies the ratio after taking
    absolute values.
    """
    n = f.arity
    if n < 1 or n > SIGNED_HYPERCUBE_MAX_N:
        raise ValueError(f"witness construction supports 1 <= arity <= {SIGNED_HYPERCUBE_MAX_N}")
    if degree(f) != n:
        raise ValueError("witness construction needs a function of full degree")
    par = bits.parity_array(n)
    vals = f.to_bit_array()
    agree = vals == par
    v0 = np.nonzero(agree)[0]
    v1 = np.nonzero(~agree)[0]
    if len(v0) == len(v1):
        raise ValueError("parity split is balanced; degree cannot be full")
    minority = v1 if len(v1) < len(v0) else v0

    b = build_signed_hypercube(n).entries.astype(float)
    w, vecs = np.linalg.eigh(b)
    basis = vecs[:, w > 0.0]
    if basis.shape[1] != (1 << n) // 2:
        raise RuntimeError("unexpected eigenspace dimension for the signed hypercube")

    if len(minority) == 0:
        v = basis[:, 0]
    else:
        c = _kernel_vector(basis[minority, :])
        v = basis @ c
    vprime = np.abs(v)
    nrm = float(np.linalg.norm(vprime))
    vprime = vprime / nrm

    graph = SensitivityGraph(f)
    a = graph.adjacency()
    ratio = float(np.linalg.norm(a @ vprime))
    if ratio < math.sqrt(n) - WITNESS_SLACK:
        raise RuntimeError(
            f"witness ratio {ratio:.12g} fell below sqrt({n}) - {WITNESS_SLACK}"
        )
    return DegreeWitness(
        vector=vprime,
        ratio=ratio,
        majority_size=max(len(v0), len(v1)),
        minority_size=min(len(v0), len(v1)),
    )


def restrict_to_top_monomial(f: TruthTable) -> TruthTable:
    """Zero out every variable outside one maximum-degree monomial.

    The kept monomial is the smallest mask among those of maximum
    degree, so the choice is deterministic.  The result has full degree
    on its surviving variables.
    """
    if f.is_constant():
        raise ValueError("constant functions have no top monomial")
    coeffs = mobius_coefficients(f)
    nz = np.nonzero(coeffs)[0]
    pops = bits.popcount_array(nz)
    top = int(pops.max())
    mask = int(nz[pops == top].min())
    fixed = {i + 1: 0 for i in range(f.arity) if not (mask >> i) & 1}
    return restrict(f, Restriction.of(fixed))


def vector_to_csv(vec: np.ndarray) -> str:
    """Render a vector as ``index,entry`` CSV lines (with header)."""
    lines = ["index,entry"]
    for i, x in enumerate(np.asarray(vec).ravel()):
        lines.append(f"{i},{float(x)!r}")
    return "\n".join(lines) + "\n"
