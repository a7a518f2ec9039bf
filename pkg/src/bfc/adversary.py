"""Single-bit adversary certificates and their cross-checks.

Four equivalent ways to bound (and in fact compute) the spectral
sensitivity of a non-constant function, each with an explicit
certificate object and an independent feasibility verifier:

* the norm of the 0/1 bipartite block between the two preimages,
* edge weights induced by the principal eigenvector,
* vertex-times-bit weight schemes (a balanced closed form and the
  eigenvector-ratio optimum, built per connected component),
* a semidefinite pair: a primal feasible solution and a dual built
  from any feasible weight scheme.

Matrices are indexed by the defined inputs in ascending order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import SensitivityGraph, spectral_sensitivity
from .tables import PartialTruthTable, TruthTable

SUPPORT_EPS = 1e-12
FEAS_SLACK = 1e-9
VALUE_SLACK = 1e-6
PSD_SLACK = 1e-8
SDP_MAX_ARITY = 8


@dataclass(frozen=True)
class BipartiteBlock:
    """0/1 incidence of sensitive pairs, zeros side by ones side."""

    zero_inputs: tuple[int, ...]
    one_inputs: tuple[int, ...]
    matrix: np.ndarray


@dataclass(frozen=True)
class EdgeWeightScheme:
    """Symmetric nonnegative weights on sensitive distance-1 pairs."""

    arity: int
    weights: tuple[tuple[int, int, float], ...]  # (x, y, w) with x < y

    def vertex_weight(self, x: int) -> float:
        return sum(w for a, b, w in self.weights if a == x or b == x)


@dataclass(frozen=True)
class VertexBitWeightScheme:
    """Weights w(x, i) on input/bit pairs; bits are 0-based."""

    arity: int
    weights: tuple[tuple[int, int, float], ...]  # (x, bit, w)
    note: str = ""

    def weight_map(self) -> dict[tuple[int, int], float]:
        return {(x, i): w for x, i, w in self.weights}

    def row_sum(self, x: int) -> float:
        return sum(w for xx, _, w in self.weights if xx == x)


@dataclass(frozen=True)
class SdpPrimal:
    domain: tuple[int, ...]
    z: np.ndarray
    delta: np.ndarray
    objective: float


@dataclass(frozen=True)
class SdpDual:
    domain: tuple[int, ...]
    alpha: float
    r_blocks: tuple[np.ndarray, ...]  # one PSD block per bit


def _graph(f: TruthTable | PartialTruthTable) -> SensitivityGraph:
    return SensitivityGraph(f)


def _sensitive_pairs(g: SensitivityGraph) -> list[tuple[int, int, int]]:
    """All (x, y, bit) with x < y and (x, y) an edge of G_f."""
    out = []
    for x in g.domain_inputs:
        for i in range(g.arity):
            y = x ^ (1 << i)
            if y > x and g.is_edge(x, y):
                out.append((x, y, i))
    return out


def _require_nonconstant(g: SensitivityGraph, what: str) -> None:
    zeros, ones = g.sides()
    if not zeros or not ones:
        raise ValueError(f"{what} needs a non-constant function")


def bipartite_block(f: TruthTable | PartialTruthTable) -> BipartiteBlock:
    g = _graph(f)
    zeros, ones = g.sides()
    q = np.zeros((len(zeros), len(ones)))
    col = {y: j for j, y in enumerate(ones)}
    for i, x in enumerate(zeros):
        for bit in range(g.arity):
            y = x ^ (1 << bit)
            if y in col and g.is_edge(x, y):
                q[i, col[y]] = 1.0
    return BipartiteBlock(tuple(zeros), tuple(ones), q)


def bipartite_block_value(f: TruthTable | PartialTruthTable) -> float:
    """||Q|| over the full preimages; 0 for constant functions."""
    block = bipartite_block(f)
    if block.matrix.size == 0:
        return 0.0
    return float(np.linalg.svd(block.matrix, compute_uv=False)[0])


def edge_scheme_from_eigenvector(
    f: TruthTable | PartialTruthTable,
) -> tuple[EdgeWeightScheme, float]:
    """w(x, y) = v(x) v(y) on sensitive pairs, v the principal eigenvector.

    The certified value is the minimum over supported pairs of
    sqrt(wt(x) wt(y)) / w(x, y); with the exact eigenvector this ratio
    is the spectral sensitivity itself on every supported pair.
    """
    g = _graph(f)
    _require_nonconstant(g, "the edge-weight scheme")
    res = spectral_sensitivity(f)
    pos = {x: k for k, x in enumerate(g.domain_inputs)}
    v = res.vector
    entries = []
    wt: dict[int, float] = {}
    for x, y, _bit in _sensitive_pairs(g):
        vx, vy = v[pos[x]], v[pos[y]]
        if vx > SUPPORT_EPS and vy > SUPPORT_EPS:
            w = float(vx * vy)
            entries.append((x, y, w))
            wt[x] = wt.get(x, 0.0) + w
            wt[y] = wt.get(y, 0.0) + w
    if not entries:
        raise ValueError("principal eigenvector has empty support on the edges")
    value = min(math.sqrt(wt[x] * wt[y]) / w for x, y, w in entries)
    return EdgeWeightScheme(g.arity, tuple(entries)), float(value)


def _side_sensitivities(g: SensitivityGraph) -> tuple[int, int]:
    zeros, ones = g.sides()
    s0 = max((g.degree_of(x) for x in zeros), default=0)
    s1 = max((g.degree_of(x) for x in ones), default=0)
    return s0, s1


def balanced_vertex_scheme(
    f: TruthTable | PartialTruthTable,
) -> tuple[VertexBitWeightScheme, float]:
    """The closed-form scheme: sqrt(s0/s1) on ones, sqrt(s1/s0) on zeros.

    Weights are placed on sensitive coordinates only; insensitive
    coordinates are zeroed (recorded in the scheme note).  The value is
    at most sqrt(s0 * s1).
    """
    g = _graph(f)
    _require_nonconstant(g, "the balanced scheme")
    s0, s1 = _side_sensitivities(g)
    entries = []
    if s0 > 0 and s1 > 0:
        ones = set(g.sides()[1])
        w_one = math.sqrt(s0 / s1)
        w_zero = math.sqrt(s1 / s0)
        for x, y, bit in _sensitive_pairs(g):
            # exactly one endpoint of a sensitive pair is a one-input
            wx = w_one if x in ones else w_zero
            wy = w_zero if x in ones else w_one
            entries.append((x, bit, wx))
            entries.append((y, bit, wy))
    scheme = VertexBitWeightScheme(
        g.arity, tuple(entries), note="insensitive coordinates carry zero weight"
    )
    return scheme, vertex_scheme_value(scheme)


def _components(g: SensitivityGraph) -> list[list[int]]:
    seen: set[int] = set()
    comps = []
    for start in g.domain_inputs:
        if start in seen or g.degree_of(start) == 0:
            continue
        comp = []
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for i in range(g.arity):
                y = x ^ (1 << i)
                if y not in seen and g.is_edge(x, y):
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def optimal_vertex_scheme(
    f: TruthTable | PartialTruthTable,
) -> tuple[VertexBitWeightScheme, float]:
    """w(x, i) = v(x^i) / v(x) from each component's principal eigenvector.

    Within a connected component the eigenvector is strictly positive,
    the products on sensitive pairs equal 1 exactly, and the row sums
    equal the component's spectral norm; the global value is therefore
    the spectral sensitivity itself.
    """
    g = _graph(f)
    _require_nonconstant(g, "the eigenvector scheme")
    entries = []
    lam = 0.0
    for comp in _components(g):
        pos = {x: k for k, x in enumerate(comp)}
        a = np.zeros((len(comp), len(comp)))
        for x in comp:
            for i in range(g.arity):
                y = x ^ (1 << i)
                if y in pos and g.is_edge(x, y):
                    a[pos[x], pos[y]] = 1.0
        w, vecs = np.linalg.eigh(a)
        lam = max(lam, float(w[-1]))
        v = np.abs(vecs[:, -1])
        if v.min() <= 0.0:
            raise ArithmeticError(
                "component eigenvector has a zero entry; cannot form weight ratios"
            )
        for x in comp:
            for i in range(g.arity):
                y = x ^ (1 << i)
                if y in pos and g.is_edge(x, y):
                    entries.append((x, i, float(v[pos[y]] / v[pos[x]])))
    scheme = VertexBitWeightScheme(
        g.arity, tuple(entries), note="per-component principal-eigenvector ratios"
    )
    value = vertex_scheme_value(scheme)
    if value > lam + VALUE_SLACK:
        raise ArithmeticError(
            f"scheme value {value:.12g} exceeds the spectral sensitivity {lam:.12g}"
        )
    return scheme, value


def vertex_scheme_value(scheme: VertexBitWeightScheme) -> float:
    sums: dict[int, float] = {}
    for x, _i, w in scheme.weights:
        sums[x] = sums.get(x, 0.0) + w
    return max(sums.values(), default=0.0)


def verify_vertex_scheme(
    f: TruthTable | PartialTruthTable,
    scheme: VertexBitWeightScheme,
    slack: float = FEAS_SLACK,
) -> tuple[bool, tuple[int, int] | None]:
    """Feasibility: w(x, i) w(y, i) >= 1 on every sensitive pair (y = x^i).

    Returns (ok, first violated pair) where the pair is (x, bit).
    """
    g = _graph(f)
    wm = scheme.weight_map()
    for x, y, bit in _sensitive_pairs(g):
        wx = wm.get((x, bit), 0.0)
        wy = wm.get((y, bit), 0.0)
        if wx * wy < 1.0 - slack:
            return False, (x, bit)
    return True, None


def verify_edge_scheme(
    f: TruthTable | PartialTruthTable, scheme: EdgeWeightScheme
) -> tuple[bool, tuple[int, int] | None]:
    """Support check: weights only on sensitive distance-1 pairs, w >= 0."""
    g = _graph(f)
    for x, y, w in scheme.weights:
        if w < 0 or not g.is_edge(x, y):
            return False, (x, y)
    return True, None


def _bit_difference_masks(domain: tuple[int, ...], arity: int) -> list[np.ndarray]:
    idx = np.asarray(domain)
    return [((idx[:, None] ^ idx[None, :]) >> i) & 1 for i in range(arity)]


def _min_eig(m: np.ndarray) -> float:
    return float(np.linalg.eigvalsh(m)[0])


def sdp_primal_certificate(f: TruthTable | PartialTruthTable) -> SdpPrimal:
    """Feasible primal pair (Z, Delta) with objective <Z, A> = lambda(f).

    Z = A o vv^T and Delta = I o vv^T for the unit principal eigenvector
    v; Delta - Z o D_i is positive semidefinite by the Schur product
    theorem because I - A o D_i is (a partial matching has eigenvalues
    in [-1, 1]).
    """
    g = _graph(f)
    if g.arity > SDP_MAX_ARITY:
        raise ValueError(f"semidefinite certificates support arity <= {SDP_MAX_ARITY}")
    _require_nonconstant(g, "the semidefinite primal")
    a = g.adjacency()
    res = spectral_sensitivity(f)
    v = res.vector
    outer = np.outer(v, v)
    z = a * outer
    delta = np.diag(v * v)
    return SdpPrimal(
        domain=tuple(g.domain_inputs),
        z=z,
        delta=delta,
        objective=float(np.sum(z * a)),
    )


def verify_sdp_primal(
    f: TruthTable | PartialTruthTable, cert: SdpPrimal, slack: float = PSD_SLACK
) -> bool:
    g = _graph(f)
    a = g.adjacency()
    z, delta = cert.z, cert.delta
    if not np.allclose(z, z.T, atol=1e-12):
        return False
    if z.min() < -1e-12:
        return False
    if np.any((z > 1e-12) & (a == 0.0)):
        return False
    if abs(np.trace(delta) - 1.0) > 1e-9:
        return False
    if np.any(np.diag(delta) < -1e-12):
        return False
    for d in _bit_difference_masks(cert.domain, g.arity):
        m = delta - z * d
        if _min_eig(m) < -slack * (1.0 + float(np.abs(m).max())):
            return False
    return True


def sdp_dual_certificate(
    f: TruthTable | PartialTruthTable, scheme: VertexBitWeightScheme
) -> SdpDual:
    """Dual blocks R_i from a feasible vertex-bit scheme.

    R_i is the outer product of sqrt(w(., i)); the dual objective alpha
    is the largest weight row sum.  An infeasible scheme is rejected
    with the violated pair.
    """
    g = _graph(f)
    if g.arity > SDP_MAX_ARITY:
        raise ValueError(f"semidefinite certificates support arity <= {SDP_MAX_ARITY}")
    _require_nonconstant(g, "the semidefinite dual")
    ok, violated = verify_vertex_scheme(f, scheme)
    if not ok:
        raise ValueError(f"infeasible weight scheme: pair {violated} multiplies below 1")
    dom = tuple(g.domain_inputs)
    pos = {x: k for k, x in enumerate(dom)}
    wm = scheme.weight_map()
    blocks = []
    for i in range(g.arity):
        r = np.zeros(len(dom))
        for x in dom:
            w = wm.get((x, i), 0.0)
            r[pos[x]] = math.sqrt(max(w, 0.0))
        blocks.append(np.outer(r, r))
    return SdpDual(domain=dom, alpha=vertex_scheme_value(scheme), r_blocks=tuple(blocks))


def verify_sdp_dual(
    f: TruthTable | PartialTruthTable, cert: SdpDual, slack: float = FEAS_SLACK
) -> bool:
    g = _graph(f)
    a = g.adjacency()
    diag_sum = np.zeros(len(cert.domain))
    cover = np.zeros_like(a)
    for i, (r, d) in enumerate(zip(cert.r_blocks, _bit_difference_masks(cert.domain, g.arity))):
        if _min_eig(r) < -PSD_SLACK * (1.0 + float(np.abs(r).max())):
            return False
        diag_sum += np.diag(r)
        cover += r * d
    if np.any(diag_sum > cert.alpha + slack):
        return False
    if np.any(cover < a - slack):
        return False
    return True


@dataclass(frozen=True)
class EquivalenceReport:
    values: dict[str, float] = field(default_factory=dict)
    max_discrepancy: float = 0.0
    verdicts: dict[str, bool] = field(default_factory=dict)

    @property
    def all_ok(self) -> bool:
        return all(self.verdicts.values())


def verify_equivalences(f: TruthTable | PartialTruthTable) -> EquivalenceReport:
    """Compute all certificate values for one function and cross-check.

    Reported values: spectral sensitivity, the bipartite-block norm,
    the eigenvector edge scheme, the optimal vertex scheme, and the
    semidefinite primal objective and dual bound.  Verdicts hold the
    outcome of every feasibility verifier plus primal <= dual.
    """
    lam = spectral_sensitivity(f).value
    kval = bipartite_block_value(f)
    edge_scheme, edge_value = edge_scheme_from_eigenvector(f)
    vertex_scheme, vertex_value = optimal_vertex_scheme(f)
    primal = sdp_primal_certificate(f)
    dual = sdp_dual_certificate(f, vertex_scheme)
    values = {
        "spectral": lam,
        "bipartite_block": kval,
        "edge_scheme": edge_value,
        "vertex_scheme": vertex_value,
        "sdp_primal": primal.objective,
        "sdp_dual": dual.alpha,
    }
    keys = list(values)
    max_disc = max(
        abs(values[a] - values[b]) for i, a in enumerate(keys) for b in keys[i + 1 :]
    )
    verdicts = {
        "edge_scheme_feasible": verify_edge_scheme(f, edge_scheme)[0],
        "vertex_scheme_feasible": verify_vertex_scheme(f, vertex_scheme)[0],
        "sdp_primal_feasible": verify_sdp_primal(f, primal),
        "sdp_dual_feasible": verify_sdp_dual(f, dual),
        "weak_duality": primal.objective <= dual.alpha + VALUE_SLACK,
    }
    return EquivalenceReport(values=values, max_discrepancy=max_disc, verdicts=verdicts)


def certificate_json(f: TruthTable | PartialTruthTable, cert) -> dict:
    """Serialize a certificate with its claimed value and verdict."""
    if isinstance(cert, EdgeWeightScheme):
        ok, _ = verify_edge_scheme(f, cert)
        return {
            "scheme": "edge-weights",
            "arity": cert.arity,
            "weights": [[x, y, w] for x, y, w in cert.weights],
            "verdict": ok,
        }
    if isinstance(cert, VertexBitWeightScheme):
        ok, violated = verify_vertex_scheme(f, cert)
        return {
            "scheme": "vertex-bit-weights",
            "arity": cert.arity,
            "note": cert.note,
            "weights": [[x, i, w] for x, i, w in cert.weights],
            "claimed_value": vertex_scheme_value(cert),
            "verdict": ok,
            "violated_pair": list(violated) if violated else None,
        }
    if isinstance(cert, SdpPrimal):
        return {
            "scheme": "sdp-primal",
            "domain": list(cert.domain),
            "z": cert.z.tolist(),
            "delta": cert.delta.tolist(),
            "claimed_value": cert.objective,
            "verdict": verify_sdp_primal(f, cert),
        }
    if isinstance(cert, SdpDual):
        return {
            "scheme": "sdp-dual",
            "domain": list(cert.domain),
            "alpha": cert.alpha,
            "r_blocks": [r.tolist() for r in cert.r_blocks],
            "verdict": verify_sdp_dual(f, cert),
        }
    raise TypeError(f"unknown certificate type {type(cert).__name__}")
