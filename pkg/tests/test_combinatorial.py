"""Cross-checks the combinatorial measures against naive recomputation.

The oracles here are deliberately slow and structure-free: they work
from f.value() alone, with dict-based restrictions and exhaustive
searches, so they share no code with the packed-integer engines.
"""

from fractions import Fraction
from itertools import combinations

import pytest

from bfc.combinatorial import (
    block_sensitivity,
    certificate_complexity,
    clear_depth_memo,
    deterministic_query_complexity,
    sensitivity,
)
from bfc.tables import TruthTable, named_family


def naive_sensitivity(f, x):
    return sum(1 for i in range(f.arity) if f.value(x) != f.value(x ^ (1 << i)))


def naive_block_sensitivity(f, x):
    sensitive = [
        b
        for b in range(1, 1 << f.arity)
        if f.value(x) != f.value(x ^ b)
    ]

    def best_packing(chosen_union, start):
        best = 0
        for k in range(start, len(sensitive)):
            b = sensitive[k]
            if b & chosen_union == 0:
                best = max(best, 1 + best_packing(chosen_union | b, k + 1))
        return best

    return best_packing(0, 0)


def naive_certificate(f, x):
    n = f.arity
    for k in range(n + 1):
        for subset in combinations(range(n), k):
            mask = sum(1 << i for i in subset)
            fixed = x & mask
            values = {
                f.value((y & ~mask) | fixed) for y in range(1 << n)
            }
            if len(values) == 1:
                return k
    raise AssertionError("unreachable")


def naive_depth(values):
    # values: dict input -> 0/1 over an n-cube given as sorted keys
    n = len(next(iter(values)))

    def rec(vals):
        outs = set(vals.values())
        if len(outs) <= 1:
            return 0
        live = [i for i in range(n) if any(k[i] != next(iter(vals))[i] for k in vals)]
        best = None
        for i in range(n):
            if not any(k[i] for k in vals) or all(k[i] for k in vals):
                continue
            half0 = {k: v for k, v in vals.items() if not k[i]}
            half1 = {k: v for k, v in vals.items() if k[i]}
            cand = 1 + max(rec(half0), rec(half1))
            if best is None or cand < best:
                best = cand
        return best

    return rec(values)


def as_tuple_values(f):
    return {
        tuple((x >> i) & 1 for i in range(f.arity)): f.value(x)
        for x in range(1 << f.arity)
    }


def all_functions(n):
    for t in range(1 << (1 << n)):
        yield TruthTable(n, t)


def test_sensitivity_exhaustive_n2():
    for f in all_functions(2):
        rep = sensitivity(f)
        per = [naive_sensitivity(f, x) for x in range(4)]
        assert list(rep.local.per_input) == per
        assert rep.local.global_value == max(per)


def test_sensitivity_sides_and_average_exhaustive_n3():
    for f in all_functions(3):
        rep = sensitivity(f)
        per = [naive_sensitivity(f, x) for x in range(8)]
        zeros = [per[x] for x in range(8) if f.value(x) == 0]
        ones = [per[x] for x in range(8) if f.value(x) == 1]
        assert rep.s0 == (max(zeros) if zeros else 0)
        assert rep.s1 == (max(ones) if ones else 0)
        assert rep.s0_defined == bool(zeros)
        assert rep.s1_defined == bool(ones)
        assert rep.average == Fraction(sum(per), 8)


def test_block_sensitivity_exhaustive_n3():
    for f in all_functions(3):
        got = block_sensitivity(f)
        want = max(naive_block_sensitivity(f, x) for x in range(8))
        assert got.global_value == want, f"bs mismatch on {f}"


def test_block_sensitivity_argmax_attains_value():
    for f in all_functions(2):
        got = block_sensitivity(f)
        assert got.per_input[got.argmax_input] == got.global_value
        assert naive_block_sensitivity(f, got.argmax_input) == got.global_value


def test_certificate_exhaustive_n3():
    for f in all_functions(3):
        got = certificate_complexity(f)
        per = [naive_certificate(f, x) for x in range(8)]
        assert list(got.per_input) == per


def test_depth_exhaustive_n3():
    clear_depth_memo()
    for f in all_functions(3):
        assert deterministic_query_complexity(f) == naive_depth(as_tuple_values(f))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_family_columns(n):
    orf = named_family("OR", n)
    assert sensitivity(orf).local.global_value == n
    assert block_sensitivity(orf).global_value == n
    assert certificate_complexity(orf).global_value == n
    assert deterministic_query_complexity(orf, max_arity=5) == n

    par = named_family("PARITY", n)
    assert sensitivity(par).local.global_value == n
    assert block_sensitivity(par).global_value == n
    assert certificate_complexity(par).global_value == n
    assert deterministic_query_complexity(par, max_arity=5) == n


def test_or_sides():
    rep = sensitivity(named_family("OR", 4))
    assert (rep.s0, rep.s1) == (4, 1)
    rep = sensitivity(named_family("AND", 4))
    assert (rep.s0, rep.s1) == (1, 4)


def test_xor_or_sides_are_both_n():
    for n in (2, 3, 4, 5):
        rep = sensitivity(named_family("XOR-OR", n))
        assert (rep.s0, rep.s1) == (n, n)


def test_and_or_block_sensitivity():
    # OR of 2 ANDs of 2: at x = 0, flipping either AND block flips f
    f = named_family("AND-OR", (2, 2))
    # this is AND of ORs; build OR of ANDs through compose order instead
    from bfc.tables import compose

    g = compose(named_family("OR", 2), named_family("AND", 2))
    assert block_sensitivity(g).global_value == 2
    assert sensitivity(g).local.global_value == 2
    assert block_sensitivity(f).global_value == 2


def test_constants():
    for n in (0, 1, 3):
        zero = TruthTable(n, 0)
        assert sensitivity(zero).local.global_value == 0
        assert block_sensitivity(zero).global_value == 0
        assert certificate_complexity(zero).global_value == 0
        assert deterministic_query_complexity(zero) == 0


def test_depth_cap_raises():
    f = named_family("OR", 7)
    with pytest.raises(ValueError):
        deterministic_query_complexity(f)
    assert deterministic_query_complexity(f, max_arity=7) == 7


def test_block_measures_cap():
    f = named_family("OR", 13)
    with pytest.raises(ValueError):
        block_sensitivity(f)
    with pytest.raises(ValueError):
        certificate_complexity(f)
