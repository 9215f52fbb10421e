# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the kernels in ``_pure``; same signatures."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()


def sort_majorana(indices):
    cdef int64_t[:] idx = np.asarray(indices, dtype=np.int64).copy()
    cdef Py_ssize_t m = idx.shape[0]
    cdef Py_ssize_t a, b
    cdef int64_t t
    cdef long swaps = 0
    # plain bubble sort: every adjacent transposition of distinct entries
    # flips the sign
    for a in range(m):
        for b in range(m - 1 - a):
            if idx[b] > idx[b + 1]:
                t = idx[b]
                idx[b] = idx[b + 1]
                idx[b + 1] = t
                swaps += 1
    out = []
    for a in range(m):
        if out and out[len(out) - 1] == idx[a]:
            out.pop()
        else:
            out.append(int(idx[a]))
    return tuple(out), -1 if swaps & 1 else 1


cdef inline int _lead(uint64_t[:] row, Py_ssize_t words) nogil:
    cdef Py_ssize_t w
    cdef uint64_t x
    cdef int bit
    for w in range(words - 1, -1, -1):
        x = row[w]
        if x:
            bit = 63
            while not (x >> bit) & 1:
                bit -= 1
            return <int>(w * 64 + bit)
    return -1


def _pack(vectors, Py_ssize_t words):
    cdef Py_ssize_t n = len(vectors)
    buf = bytearray(n * words * 8)
    cdef Py_ssize_t i
    for i in range(n):
        buf[i * words * 8:(i + 1) * words * 8] = int(vectors[i]).to_bytes(words * 8, "little")
    return np.frombuffer(bytes(buf), dtype="<u8").reshape(n, words).copy()


def gf2_independent_flags(vectors, int n_bits, limit=None):
    cdef Py_ssize_t n = len(vectors)
    cdef Py_ssize_t words = max(1, (n_bits + 63) // 64)
    for v in vectors:
        if int(v) >> n_bits:
            raise ValueError("vector wider than n_bits")
    if n == 0:
        return []
    cdef uint64_t[:, :] rows = _pack(vectors, words)
    cdef uint64_t[:, :] basis = np.zeros((min(n, n_bits) + 1, words), dtype=np.uint64)
    cdef int64_t[:] pivot = np.full(n_bits + 1, -1, dtype=np.int64)
    cdef Py_ssize_t cap = -1 if limit is None else <Py_ssize_t>limit
    cdef Py_ssize_t kept = 0, i, w, top
    cdef int h
    cdef int64_t p
    cdef cnp.uint8_t[:] flags = np.zeros(n, dtype=np.uint8)
    with nogil:
        for i in range(n):
            if cap >= 0 and kept >= cap:
                continue
            h = _lead(rows[i], words)
            while h >= 0:
                p = pivot[h]
                if p < 0:
                    for w in range(words):
                        basis[kept, w] = rows[i, w]
                    pivot[h] = kept
                    kept += 1
                    flags[i] = 1
                    break
                top = h // 64
                for w in range(top + 1):
                    rows[i, w] ^= basis[p, w]
                h = _lead(rows[i], top + 1)
    return [bool(f) for f in flags]


def best_bipartition(weights):
    cdef double[:] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t k = w.shape[0]
    if k < 2:
        return 0.0, 0
    cdef double total = float(np.asarray(w).sum())
    cdef Py_ssize_t limit = (<Py_ssize_t>1) << (k - 1)
    cdef double[:] sums = np.empty(limit, dtype=np.float64)
    cdef Py_ssize_t i, j, half, mask, best_mask = 0
    cdef double s, v, best = -1.0
    with nogil:
        # subset sums by doubling, same addition order as the fallback
        sums[0] = 0.0
        half = 1
        for i in range(1, k):
            for j in range(half):
                sums[j + half] = sums[j] + w[i]
            half *= 2
        for mask in range(limit):
            s = sums[mask]
            v = s if s < total - s else total - s
            if v > best:
                best = v
                best_mask = mask
    return best, int(best_mask) << 1
