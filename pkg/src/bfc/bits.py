"""Bit-level helpers for packed truth tables.

A function on n variables is stored as a Python int with bit x holding
f(x) for x in [0, 2^n).  Variable 1 is the least significant bit of the
input index, so flipping variable i maps index x to x ^ (1 << (i - 1)).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


def popcount(x: int) -> int:
    return x.bit_count()


@lru_cache(maxsize=None)
def table_mask(n: int) -> int:
    """All 2^n table positions set."""
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def axis_mask(n: int, axis: int) -> int:
    """Positions x in [0, 2^n) whose bit `axis` (0-based) is clear."""
    step = 1 << axis
    m = (1 << step) - 1
    width = 2 * step
    size = 1 << n
    while width < size:
        m |= m << width
        width *= 2
    return m & table_mask(n)


def flip_axis(t: int, n: int, axis: int) -> int:
    """Permute table positions by x -> x ^ (1 << axis)."""
    s = 1 << axis
    lo = axis_mask(n, axis)
    return ((t & lo) << s) | ((t >> s) & lo)


def xor_permute(t: int, n: int, mask: int) -> int:
    """Permute table positions by x -> x ^ mask."""
    axis = 0
    while mask:
        if mask & 1:
            t = flip_axis(t, n, axis)
        axis += 1
        mask >>= 1
    return t


def sensitive_positions(t: int, n: int, axis: int) -> int:
    """Bitmask of inputs x with f(x) != f(x ^ (1 << axis))."""
    return t ^ flip_axis(t, n, axis)


def restrict_axis(t: int, n: int, axis: int, value: int) -> int:
    """Fix input bit `axis` to `value`; result is a table on n-1 variables.

    Surviving variables keep their relative order and are renumbered to
    close the gap.
    """
    if n <= 9:
        out = 0
        low = (1 << axis) - 1
        for y in range(1 << (n - 1)):
            x = ((y >> axis) << (axis + 1)) | (value << axis) | (y & low)
            out |= ((t >> x) & 1) << y
        return out
    bits = to_bit_array(t, n)
    kept = bits.reshape(-1, 2, 1 << axis)[:, value, :].reshape(-1)
    return from_bit_array(kept)


def to_bit_array(t: int, n: int) -> np.ndarray:
    """Unpack a table int into a uint8 array of length 2^n."""
    size = 1 << n
    nbytes = (size + 7) >> 3
    raw = np.frombuffer(t.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size]


def from_bit_array(bits: np.ndarray) -> int:
    """Pack a 0/1 array (index = input) back into a table int."""
    raw = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(raw.tobytes(), "little")


def popcount_array(a: np.ndarray) -> np.ndarray:
    """Per-element popcount of a nonnegative integer array."""
    return np.bitwise_count(a.astype(np.uint64)).astype(np.int64)


def parity_array(n: int) -> np.ndarray:
    """parity(x) = popcount(x) mod 2 for every x in [0, 2^n), as uint8."""
    v = np.arange(1 << n, dtype=np.uint32)
    for s in (16, 8, 4, 2, 1):
        v ^= v >> s
    return (v & 1).astype(np.uint8)


def submasks(mask: int):
    """All submasks of `mask`, including 0 and mask itself."""
    u = mask
    while True:
        yield u
        if u == 0:
            return
        u = (u - 1) & mask
