"""Inequality sweeps over whole function universes.

The suite checks every known comparison between the implemented
measures — sensitivity, block sensitivity, certificate complexity,
decision depth, real and parity degree, and spectral sensitivity — on
either every function of a fixed arity or a seeded random sample.
Violations are counted (there should never be one); for each
inequality the function with the smallest slack is recorded as a
witness.  Ratio pairs that are only conjectured to be bounded are
reported as observed maxima with witnesses, never asserted.

Aggregation is associative and commutative with deterministic
tie-breaks, so results are independent of chunking and thread count.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .algebraic import approximate_degree, degree, degree_gf2
from .combinatorial import (
    block_sensitivity,
    certificate_complexity,
    clear_depth_memo,
    deterministic_query_complexity,
    sensitivity,
)
from .report import report_hash
from .spectral import spectral_sensitivity
from .tables import TruthTable, format_table

EXHAUSTIVE_MAX_N = 4
SAMPLED_MAX_N = 8
APPROX_RATIO_MAX_N = 4
DEFAULT_TOLERANCE = 1e-6
MEMO_CLEAR_ARITY = 7  # above this, the depth memo is reset per function

CHECK_NAMES = (
    "deg<=lambda^2",
    "s<=lambda^2",
    "lambda<=s",
    "lambda<=sqrt(s0*s1)",
    "avg_s<=lambda",
    "deg<=s0*s1",
    "deg2<=deg",
    "s<=bs",
    "bs<=C",
    "C<=bs*s",
    "D<=bs*C",
    "D<=bs*deg",
    "deg<=D",
)
FLOAT_CHECKS = frozenset(
    ("deg<=lambda^2", "s<=lambda^2", "lambda<=s", "lambda<=sqrt(s0*s1)", "avg_s<=lambda")
)
RATIO_NAMES = ("lambda/deg", "D/bs^2", "D/lambda^4")


def _measures_for(n: int, table: int) -> dict:
    f = TruthTable(n, table)
    if n >= MEMO_CLEAR_ARITY:
        clear_depth_memo()
    sens = sensitivity(f)
    return {
        "s": sens.local.global_value,
        "s0": sens.s0,
        "s1": sens.s1,
        "avg": float(sens.average),
        "bs": block_sensitivity(f).global_value,
        "c": certificate_complexity(f).global_value,
        "d": deterministic_query_complexity(f, max_arity=n),
        "deg": degree(f),
        "deg2": degree_gf2(f),
        "lam": spectral_sensitivity(f).value,
    }


def _check_margins(m: dict) -> list[tuple[str, float, float, float]]:
    """(name, margin, lhs, rhs) per inequality; margin >= 0 means satisfied."""
    lam = m["lam"]
    lam2 = lam * lam
    s0s1 = m["s0"] * m["s1"]
    root = math.sqrt(s0s1)
    return [
        ("deg<=lambda^2", lam2 - m["deg"], m["deg"], lam2),
        ("s<=lambda^2", lam2 - m["s"], m["s"], lam2),
        ("lambda<=s", m["s"] - lam, lam, m["s"]),
        ("lambda<=sqrt(s0*s1)", root - lam, lam, root),
        ("avg_s<=lambda", lam - m["avg"], m["avg"], lam),
        ("deg<=s0*s1", s0s1 - m["deg"], m["deg"], s0s1),
        ("deg2<=deg", m["deg"] - m["deg2"], m["deg2"], m["deg"]),
        ("s<=bs", m["bs"] - m["s"], m["s"], m["bs"]),
        ("bs<=C", m["c"] - m["bs"], m["bs"], m["c"]),
        ("C<=bs*s", m["bs"] * m["s"] - m["c"], m["c"], m["bs"] * m["s"]),
        ("D<=bs*C", m["bs"] * m["c"] - m["d"], m["d"], m["bs"] * m["c"]),
        ("D<=bs*deg", m["bs"] * m["deg"] - m["d"], m["d"], m["bs"] * m["deg"]),
        ("deg<=D", m["d"] - m["deg"], m["deg"], m["d"]),
    ]


def _ratio_entries(m: dict) -> list[tuple[str, float, float, float]]:
    """(name, ratio, numerator, denominator); constants contribute nothing."""
    out = []
    if m["deg"] > 0:
        out.append(("lambda/deg", m["lam"] / m["deg"], m["lam"], float(m["deg"])))
    if m["bs"] > 0:
        bs2 = m["bs"] ** 2
        out.append(("D/bs^2", m["d"] / bs2, float(m["d"]), float(bs2)))
    if m["lam"] > 0:
        lam4 = m["lam"] ** 4
        out.append(("D/lambda^4", m["d"] / lam4, float(m["d"]), lam4))
    return out


def _empty_partial() -> dict:
    return {
        "checks": {name: [0, 0, None] for name in CHECK_NAMES},
        "ratios": {name: None for name in RATIO_NAMES},
    }


def _fold_function(partial: dict, n: int, table: int, tolerance: float) -> None:
    m = _measures_for(n, table)
    for name, margin, lhs, rhs in _check_margins(m):
        slot = partial["checks"][name]
        tol = tolerance if name in FLOAT_CHECKS else 0.0
        if margin >= -tol:
            slot[0] += 1
        else:
            slot[1] += 1
        key = (margin, table, lhs, rhs)
        if slot[2] is None or key < slot[2]:
            slot[2] = key
    for name, ratio, num, den in _ratio_entries(m):
        cur = partial["ratios"][name]
        key = (-ratio, table, num, den)
        if cur is None or key < cur:
            partial["ratios"][name] = key


def _sweep_chunk(args: tuple) -> dict:
    n, spec, tolerance = args
    partial = _empty_partial()
    tables = range(spec[1], spec[2]) if spec[0] == "range" else spec[1]
    for table in tables:
        _fold_function(partial, n, table, tolerance)
    return partial


def _merge(acc: dict, part: dict) -> None:
    for name, slot in part["checks"].items():
        dst = acc["checks"][name]
        dst[0] += slot[0]
        dst[1] += slot[1]
        if slot[2] is not None and (dst[2] is None or slot[2] < dst[2]):
            dst[2] = slot[2]
    for name, key in part["ratios"].items():
        cur = acc["ratios"][name]
        if key is not None and (cur is None or key < cur):
            acc["ratios"][name] = key


def sample_tables(n: int, count: int, seed: int) -> list[int]:
    """``count`` truth tables of arity ``n`` from a seeded 64-bit generator."""
    rng = np.random.default_rng(seed)
    n_bytes = ((1 << n) + 7) // 8
    mask = (1 << (1 << n)) - 1
    out = []
    for _ in range(count):
        raw = rng.integers(0, 256, size=n_bytes, dtype=np.int64).astype(np.uint8)
        out.append(int.from_bytes(raw.tobytes(), "little") & mask)
    return out


def _npn_transforms(n: int) -> list[list[int]]:
    """Index maps p with g(x) = f(p[x]) for every variable permutation
    combined with every pattern of input complementations."""
    size = 1 << n
    maps = []
    for pi in itertools.permutations(range(n)):
        base = []
        for x in range(size):
            y = 0
            for i in range(n):
                if (x >> i) & 1:
                    y |= 1 << pi[i]
            base.append(y)
        for flips in range(size):
            maps.append([b ^ flips for b in base])
    return maps


def npn_canonical_array(n: int) -> np.ndarray:
    """Per table: the least table reachable by permuting variables,
    complementing inputs, and complementing the output."""
    if not 1 <= n <= APPROX_RATIO_MAX_N:
        raise ValueError(f"canonicalization supports 1 <= n <= {APPROX_RATIO_MAX_N}")
    size = 1 << n
    count = 1 << size
    idx = np.arange(count, dtype=np.uint32)
    canon = idx.copy()
    full = np.uint32(count - 1)
    for p in _npn_transforms(n):
        tt = np.zeros(count, dtype=np.uint32)
        for x in range(size):
            tt |= ((idx >> np.uint32(p[x])) & np.uint32(1)) << np.uint32(x)
        np.minimum(canon, tt, out=canon)
        np.minimum(canon, tt ^ full, out=canon)
    return canon


def approx_degree_ratio(n: int, epsilon: float = 1.0 / 3.0) -> dict:
    """Max observed spectral-sensitivity / approximate-degree ratio at arity n.

    Both quantities are invariant under variable permutation and
    input/output complementation, so only one representative per
    equivalence class is evaluated; the witness is the class's least
    table.
    """
    canon = npn_canonical_array(n)
    reps = np.unique(canon)
    best = None
    for rep in reps:
        f = TruthTable(n, int(rep))
        if f.is_constant():
            continue
        ad = approximate_degree(f, epsilon)
        lam = spectral_sensitivity(f).value
        key = (-(lam / ad), int(rep), lam, float(ad))
        if best is None or key < best:
            best = key
    ratio, table, num, den = -best[0], best[1], best[2], best[3]
    return {
        "name": "lambda/adeg",
        "max_ratio": ratio,
        "witness": format_table(TruthTable(n, table)),
        "numerator": num,
        "denominator": den,
        "class_count": int(len(reps)),
        "note": "evaluated on equivalence-class representatives",
    }


@dataclass(frozen=True)
class SweepResult:
    universe: dict
    tolerance: float
    checks: list[dict]
    ratios: list[dict]
    violation_count: int
    report_hash: str
    elapsed_seconds: float

    def to_dict(self) -> dict:
        return {
            "universe": self.universe,
            "tolerance": self.tolerance,
            "checks": self.checks,
            "ratios": self.ratios,
            "violation_count": self.violation_count,
            "report_hash": self.report_hash,
            "timing": {"elapsed_seconds": self.elapsed_seconds},
        }


def resolve_threads(requested: int | None) -> int:
    """BFC_THREADS wins over the flag; 0 or None means one per CPU."""
    env = os.environ.get("BFC_THREADS")
    if env is not None:
        requested = int(env)
    if not requested or requested < 1:
        return os.cpu_count() or 1
    return requested


def _chunk_specs(n: int, sample: int | None, seed: int, threads: int) -> list[tuple]:
    if sample is None:
        total = 1 << (1 << n)
        pieces = min(max(threads * 4, 1), total)
        step = (total + pieces - 1) // pieces
        return [("range", lo, min(lo + step, total)) for lo in range(0, total, step)]
    tables = sample_tables(n, sample, seed)
    pieces = min(max(threads * 4, 1), len(tables)) or 1
    step = (len(tables) + pieces - 1) // pieces
    return [("list", tuple(tables[lo : lo + step])) for lo in range(0, len(tables), step)]


def run_sweep(
    max_n: int = 3,
    sample: int | None = None,
    seed: int = 0,
    tolerance: float = DEFAULT_TOLERANCE,
    threads: int = 1,
) -> SweepResult:
    """Run the full inequality suite over one universe of functions.

    ``sample=None`` checks all 2^(2^max_n) tables of arity ``max_n``
    (max_n <= 4); otherwise ``sample`` seeded random tables of that
    arity (max_n <= 8).  The spectral/approximate-degree ratio block
    runs only for exhaustive universes, where class representatives
    cover every function.
    """
    if sample is None:
        if not 1 <= max_n <= EXHAUSTIVE_MAX_N:
            raise ValueError(f"exhaustive sweeps support 1 <= max_n <= {EXHAUSTIVE_MAX_N}")
        universe = {
            "mode": "exhaustive",
            "arity": max_n,
            "function_count": 1 << (1 << max_n),
        }
    else:
        if not 1 <= max_n <= SAMPLED_MAX_N:
            raise ValueError(f"sampled sweeps support 1 <= max_n <= {SAMPLED_MAX_N}")
        if sample < 1:
            raise ValueError("sample count must be positive")
        universe = {
            "mode": "sampled",
            "arity": max_n,
            "function_count": sample,
            "seed": seed,
        }

    started = time.perf_counter()
    threads = max(1, threads)
    specs = _chunk_specs(max_n, sample, seed, threads)
    acc = _empty_partial()
    if threads == 1 or len(specs) == 1:
        for spec in specs:
            _merge(acc, _sweep_chunk((max_n, spec, tolerance)))
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for partial in pool.map(
                _sweep_chunk, [(max_n, spec, tolerance) for spec in specs]
            ):
                _merge(acc, partial)

    checks = []
    for name in CHECK_NAMES:
        passes, failures, worst = acc["checks"][name]
        margin, table, lhs, rhs = worst
        checks.append(
            {
                "name": name,
                "passes": passes,
                "failures": failures,
                "min_margin": margin,
                "witness": format_table(TruthTable(max_n, table)),
                "witness_lhs": lhs,
                "witness_rhs": rhs,
            }
        )
    ratios = []
    for name in RATIO_NAMES:
        key = acc["ratios"][name]
        if key is None:
            continue
        neg_ratio, table, num, den = key
        ratios.append(
            {
                "name": name,
                "max_ratio": -neg_ratio,
                "witness": format_table(TruthTable(max_n, table)),
                "numerator": num,
                "denominator": den,
            }
        )
    if sample is None and max_n <= APPROX_RATIO_MAX_N:
        ratios.append(approx_degree_ratio(max_n))

    violation_count = sum(c["failures"] for c in checks)
    body = {
        "universe": universe,
        "tolerance": tolerance,
        "checks": checks,
        "ratios": ratios,
        "violation_count": violation_count,
    }
    return SweepResult(
        universe=universe,
        tolerance=tolerance,
        checks=checks,
        ratios=ratios,
        violation_count=violation_count,
        report_hash=report_hash(body),
        elapsed_seconds=time.perf_counter() - started,
    )


def iter_csv_rows(
    max_n: int,
    sample: int | None = None,
    seed: int = 0,
    tolerance: float = DEFAULT_TOLERANCE,
):
    """One CSV row per (function, inequality), streamed in table order."""
    yield "n,table,check,lhs,rhs,margin,pass"
    if sample is None:
        tables = range(1 << (1 << max_n))
    else:
        tables = sample_tables(max_n, sample, seed)
    for table in tables:
        m = _measures_for(max_n, table)
        spec = format_table(TruthTable(max_n, table))
        for name, margin, lhs, rhs in _check_margins(m):
            tol = tolerance if name in FLOAT_CHECKS else 0.0
            ok = margin >= -tol
            yield f"{max_n},{spec},{name},{lhs!r},{rhs!r},{margin!r},{str(ok).lower()}"
