"""Reference kernels in plain Python.

These define the semantics; the compiled module must agree with them
bit for bit (floats: to the last accumulated rounding).
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def sort_majorana(indices: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Order a raw Majorana word and cancel squares.

    Returns the strictly increasing surviving indices and the sign picked up
    by anticommuting distinct neighbours past each other.
    """
    idx = list(indices)
    m = len(idx)
    inversions = 0
    for a in range(m):
        ia = idx[a]
        for b in range(a + 1, m):
            if ia > idx[b]:
                inversions += 1
    idx.sort()
    out: list[int] = []
    for k in idx:
        if out and out[-1] == k:
            out.pop()
        else:
            out.append(k)
    return tuple(out), -1 if inversions & 1 else 1


def gf2_independent_flags(vectors: Sequence[int], n_bits: int, limit: int | None = None) -> list[bool]:
    """Greedy GF(2) insertion in order; flag each vector kept as independent.

    Vectors are Python ints used as bit sets of width ``n_bits``.  Once
    ``limit`` vectors have been kept the remaining ones are flagged False
    without being examined.
    """
    pivots: dict[int, int] = {}
    flags: list[bool] = []
    kept = 0
    for v in vectors:
        if limit is not None and kept >= limit:
            flags.append(False)
            continue
        if v >> n_bits:
            raise ValueError("vector wider than n_bits")
        while v:
            h = v.bit_length() - 1
            p = pivots.get(h)
            if p is None:
                pivots[h] = v
                break
            v ^= p
        flags.append(bool(v))
        kept += bool(v)
    return flags


def best_bipartition(weights: Sequence[float]) -> tuple[float, int]:
    """Exact two-way split maximizing the lighter side.

    Returns ``(value, mask)`` where bit ``i`` of ``mask`` puts item ``i`` on
    the first side.  Item 0 is pinned to the second side to halve the search.
    """
    w = np.asarray(weights, dtype=np.float64)
    k = len(w)
    if k < 2:
        return 0.0, 0
    total = float(w.sum())
    # subset sums over items 1..k-1, built by doubling; each entry is a
    # fixed-order sum so no drift accumulates across the enumeration
    sums = np.zeros(1, dtype=np.float64)
    for i in range(1, k):
        sums = np.concatenate([sums, sums + w[i]])
    vals = np.minimum(sums, total - sums)
    best = int(np.argmax(vals))
    return float(vals[best]), best << 1
