"""Monotone graph properties on a few vertices.

A graph on ``n`` labelled vertices is encoded by the C(n,2) unordered
pairs in lexicographic order: pair number k (1-based) is input bit
k-1.  A graph property is a truth table over those bits invariant
under all vertex relabelings; a monotone one never flips from 1 to 0
when an edge is added.

The module checks both conditions, canonicalizes graphs by explicit
minimization over all n! permutations, enumerates every nontrivial
monotone property as an upward-closed set of isomorphism classes, and
computes the measure chain (parity degree, degree, spectral
sensitivity, decision depth) that underlies query lower bounds for
such properties.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import bits
from .algebraic import degree, degree_gf2
from .combinatorial import deterministic_query_complexity
from .spectral import spectral_sensitivity
from .tables import TruthTable, format_table

ENUMERATION_MAX_VERTICES = 5
TABLE_MAX_VERTICES = 6
CHAIN_SLACK = 1e-6
DEPTH_DEFAULT_CAP = 6

CSV_HEADER = "n_vertices,property,deg2,deg,lambda,depth,chain_ok"


def edge_arity(n_vertices: int) -> int:
    return n_vertices * (n_vertices - 1) // 2


def pair_list(n_vertices: int) -> list[tuple[int, int]]:
    """Vertex pairs in bit order: bit k holds pair ``pair_list(n)[k]``."""
    return [(i, j) for i in range(n_vertices) for j in range(i + 1, n_vertices)]


@lru_cache(maxsize=None)
def _bit_maps(n_vertices: int) -> tuple[tuple[int, ...], ...]:
    """For each vertex permutation, where each edge bit lands."""
    pairs = pair_list(n_vertices)
    index = {p: k for k, p in enumerate(pairs)}
    maps = []
    for sigma in itertools.permutations(range(n_vertices)):
        maps.append(
            tuple(index[tuple(sorted((sigma[i], sigma[j])))] for (i, j) in pairs)
        )
    return tuple(maps)


def apply_vertex_permutation(mask: int, n_vertices: int, sigma: tuple[int, ...]) -> int:
    """Relabel the graph ``mask`` by the vertex permutation ``sigma``."""
    pairs = pair_list(n_vertices)
    index = {p: k for k, p in enumerate(pairs)}
    out = 0
    for k, (i, j) in enumerate(pairs):
        if (mask >> k) & 1:
            out |= 1 << index[tuple(sorted((sigma[i], sigma[j])))]
    return out


def canonical_graph(mask: int, n_vertices: int) -> int:
    """Minimum edge mask over all vertex relabelings."""
    best = mask
    for bm in _bit_maps(n_vertices):
        y = 0
        for k, p in enumerate(bm):
            if (mask >> k) & 1:
                y |= 1 << p
        if y < best:
            best = y
    return best


def _class_array(n_vertices: int) -> np.ndarray:
    """canonical_graph for every mask at once."""
    m = edge_arity(n_vertices)
    xs = np.arange(1 << m, dtype=np.int64)
    best = xs.copy()
    for bm in _bit_maps(n_vertices):
        ys = np.zeros_like(xs)
        for k, p in enumerate(bm):
            ys |= ((xs >> k) & 1) << p
        np.minimum(best, ys, out=best)
    return best


def is_graph_property(f: TruthTable, n_vertices: int) -> bool:
    """True iff the table is invariant under every vertex relabeling."""
    m = edge_arity(n_vertices)
    if f.arity != m:
        raise ValueError(
            f"a property on {n_vertices} vertices needs arity {m}, got {f.arity}"
        )
    if n_vertices > TABLE_MAX_VERTICES:
        raise ValueError(f"graph property tables are capped at {TABLE_MAX_VERTICES} vertices")
    vals = f.to_bit_array()
    xs = np.arange(1 << m, dtype=np.int64)
    for bm in _bit_maps(n_vertices):
        ys = np.zeros_like(xs)
        for k, p in enumerate(bm):
            ys |= ((xs >> k) & 1) << p
        if not np.array_equal(vals[ys], vals):
            return False
    return True


def is_monotone(f: TruthTable) -> bool:
    """True iff no single 0 -> 1 bit flip can decrease the value."""
    for i in range(f.arity):
        low_positions = bits.axis_mask(f.arity, i)
        t_low = f.table & low_positions
        t_high = (f.table >> (1 << i)) & low_positions
        if t_low & ~t_high:
            return False
    return True


@dataclass(frozen=True)
class GraphProperty:
    """A nontrivial monotone graph property.

    ``upset`` holds the canonical masks of the isomorphism classes on
    which the property is 1; it is closed under adding edges.
    """

    n_vertices: int
    table: TruthTable
    upset: frozenset[int]
    name: str = ""

    @property
    def property_id(self) -> str:
        return self.name or format_table(self.table)


def _class_poset(n_vertices: int) -> tuple[list[int], list[list[int]], np.ndarray]:
    """Classes in topological order, cover-predecessor lists, class map."""
    cls = _class_array(n_vertices)
    classes = sorted({int(c) for c in cls}, key=lambda c: (c.bit_count(), c))
    idx = {c: i for i, c in enumerate(classes)}
    m = edge_arity(n_vertices)
    preds: list[list[int]] = [[] for _ in classes]
    for c in classes:
        for j in range(m):
            if not (c >> j) & 1:
                d = int(cls[c | (1 << j)])
                if d != c and idx[c] not in preds[idx[d]]:
                    preds[idx[d]].append(idx[c])
    return classes, preds, cls


def enumerate_monotone_properties(n_vertices: int) -> list[GraphProperty]:
    """Every nontrivial monotone graph property on ``n_vertices`` vertices.

    Walks the isomorphism-class poset in ascending edge-count order,
    branching on membership wherever no already-included class forces
    inclusion; each accepted up-set is materialized as a truth table.
    Trivial all-0 and all-1 properties are excluded.
    """
    if not 2 <= n_vertices <= ENUMERATION_MAX_VERTICES:
        raise ValueError(
            f"enumeration supports 2 <= n_vertices <= {ENUMERATION_MAX_VERTICES}"
        )
    classes, preds, cls = _class_poset(n_vertices)
    k = len(classes)
    idx = {c: i for i, c in enumerate(classes)}
    topo_index = np.array([idx[int(c)] for c in cls])  # per mask: class position

    member = np.zeros(k, dtype=bool)
    out: list[GraphProperty] = []

    def emit() -> None:
        if not member.any() or member[0]:
            return  # all-0, or contains the empty graph hence all-1
        table_bits = member[topo_index].astype(np.uint8)
        table = TruthTable(edge_arity(n_vertices), bits.from_bit_array(table_bits))
        upset = frozenset(classes[i] for i in range(k) if member[i])
        out.append(GraphProperty(n_vertices, table, upset))

    def walk(i: int) -> None:
        if i == k:
            emit()
            return
        if any(member[p] for p in preds[i]):
            member[i] = True
            walk(i + 1)
            member[i] = False
        else:
            member[i] = False
            walk(i + 1)
            member[i] = True
            walk(i + 1)
            member[i] = False

    walk(0)
    return out


def _connected(mask: int, n_vertices: int, pairs: list[tuple[int, int]]) -> bool:
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for k, (i, j) in enumerate(pairs):
            if (mask >> k) & 1:
                if i == v and j not in seen:
                    seen.add(j)
                    stack.append(j)
                elif j == v and i not in seen:
                    seen.add(i)
                    stack.append(i)
    return len(seen) == n_vertices


def _has_clique(mask: int, n_vertices: int, size: int, index: dict) -> bool:
    for group in itertools.combinations(range(n_vertices), size):
        if all(
            (mask >> index[(a, b)]) & 1 for a, b in itertools.combinations(group, 2)
        ):
            return True
    return False


def named_property(name: str, n_vertices: int, clique_size: int | None = None) -> GraphProperty:
    """Build a standard property by name.

    Names: ``has-edge``, ``connectivity``, ``contains-triangle``,
    ``contains-clique`` (requires ``clique_size``), ``min-degree-1``.
    The result is validated for invariance, monotonicity, and
    nontriviality before being returned.
    """
    if not 2 <= n_vertices <= TABLE_MAX_VERTICES:
        raise ValueError(f"named properties support 2 <= n_vertices <= {TABLE_MAX_VERTICES}")
    m = edge_arity(n_vertices)
    pairs = pair_list(n_vertices)
    index = {p: k for k, p in enumerate(pairs)}

    if name == "contains-triangle":
        name, clique_size = "contains-clique", 3
    if name == "has-edge":
        predicate = lambda mask: mask != 0
    elif name == "connectivity":
        predicate = lambda mask: _connected(mask, n_vertices, pairs)
    elif name == "contains-clique":
        if clique_size is None or not 2 <= clique_size <= n_vertices:
            raise ValueError("contains-clique needs 2 <= clique_size <= n_vertices")
        size = clique_size
        predicate = lambda mask: _has_clique(mask, n_vertices, size, index)
    elif name == "min-degree-1":
        full = [sum(1 << k for k, p in enumerate(pairs) if v in p) for v in range(n_vertices)]
        predicate = lambda mask: all(mask & inc for inc in full)
    else:
        raise ValueError(f"unknown property name {name!r}")

    t = 0
    for mask in range(1 << m):
        if predicate(mask):
            t |= 1 << mask
    table = TruthTable(m, t)
    if not is_graph_property(table, n_vertices):
        raise RuntimeError(f"{name}: table is not permutation-invariant")
    if not is_monotone(table):
        raise RuntimeError(f"{name}: table is not monotone")
    if table.value(0) != 0 or table.value((1 << m) - 1) != 1:
        raise ValueError(f"{name} is trivial on {n_vertices} vertices")
    cls = _class_array(n_vertices)
    upset = frozenset(int(cls[mask]) for mask in range(1 << m) if table.value(mask))
    display = name if name != "contains-clique" else f"contains-clique-{clique_size}"
    return GraphProperty(n_vertices, table, upset, name=display)


@dataclass(frozen=True)
class PropertyChainReport:
    """Measure chain for one property: parity degree up to decision depth."""

    n_vertices: int
    property_id: str
    deg2: int
    deg: int
    spectral: float
    depth: int
    chain_ok: bool

    def to_csv_row(self) -> str:
        return (
            f"{self.n_vertices},{self.property_id},{self.deg2},{self.deg},"
            f"{self.spectral!r},{self.depth},{str(self.chain_ok).lower()}"
        )


def property_chain_report(p: GraphProperty) -> PropertyChainReport:
    """deg2 <= deg <= lambda^2 <= D for a monotone graph property.

    The spectral-vs-degree steps are checked with a 1e-6 slack; the
    degree comparisons are exact integers.  Property tables on 5
    vertices have arity 10, above the default decision-depth cap, so
    the cap is raised here (with a warning) — dense memoization keeps
    that tractable.
    """
    f = p.table
    if f.arity > DEPTH_DEFAULT_CAP:
        warnings.warn(
            f"raising the decision-depth cap to arity {f.arity} for a property table",
            RuntimeWarning,
            stacklevel=2,
        )
    d2 = degree_gf2(f)
    dg = degree(f)
    lam = spectral_sensitivity(f).value
    depth = deterministic_query_complexity(f, max_arity=f.arity)
    chain_ok = (
        lam >= math.sqrt(dg) - CHAIN_SLACK
        and math.sqrt(dg) >= math.sqrt(d2) - CHAIN_SLACK
        and dg >= d2
    )
    return PropertyChainReport(
        n_vertices=p.n_vertices,
        property_id=p.property_id,
        deg2=d2,
        deg=dg,
        spectral=lam,
        depth=depth,
        chain_ok=chain_ok,
    )
