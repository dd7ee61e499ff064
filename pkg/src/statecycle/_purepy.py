"""Pure-Python implementations of the hot kernels.

Same signatures as the compiled ``_kernels`` module.  Sparse matrices are
passed as CSR triples ``(indptr, indices, data)`` of row vectors.
"""

from __future__ import annotations

from math import gcd

import numpy as np


def loop_histogram(crossings, n_arcs: int) -> np.ndarray:
    """``counts[h, k]`` = number of smoothings with ``h`` 1-bits and ``k`` loops."""
    xs = [tuple(int(v) - 1 for v in x) for x in crossings]
    n = len(xs)
    counts = np.zeros((n + 1, n_arcs + 2), dtype=np.int64)
    for mask in range(1 << n):
        parent = list(range(n_arcs))
        loops = n_arcs
        for i, (a, b, c, d) in enumerate(xs):
            if (mask >> i) & 1:
                pairs = ((a, d), (b, c))
            else:
                pairs = ((a, b), (c, d))
            for u, v in pairs:
                while parent[u] != u:
                    parent[u] = parent[parent[u]]
                    u = parent[u]
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                if u != v:
                    parent[u] = v
                    loops -= 1
        counts[bin(mask).count("1"), loops] += 1
    return counts


def _rows(indptr, indices, data):
    for r in range(len(indptr) - 1):
        lo, hi = int(indptr[r]), int(indptr[r + 1])
        row = {}
        for k in range(lo, hi):
            v = int(data[k])
            if v:
                c = int(indices[k])
                row[c] = row.get(c, 0) + v
        yield {c: v for c, v in row.items() if v}


def rank_modp(indptr, indices, data, ncols: int, p: int) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for row in _rows(indptr, indices, data):
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {c: v * inv % p for c, v in row.items()}
                break
            f = row[lead]
            for c, v in piv.items():
                nv = (row.get(c, 0) - f * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def rank_int(indptr, indices, data, ncols: int) -> int:
    """Exact rank over Q by fraction-free elimination on integer rows."""
    pivots: dict[int, dict[int, int]] = {}
    for row in _rows(indptr, indices, data):
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a, b = row[lead], piv[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {c: b * v for c, v in row.items()}
            for c, v in piv.items():
                nv = new.get(c, 0) - a * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {c: v // g for c, v in new.items()}
            row = new
    return len(pivots)
