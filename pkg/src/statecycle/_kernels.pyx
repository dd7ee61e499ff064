# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled hot kernels; see ``_purepy`` for the reference versions."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from libcpp.vector cimport vector
from libcpp.pair cimport pair

cnp.import_array()

ctypedef pair[int64_t, int64_t] entry
ctypedef vector[entry] row_t

cdef extern from *:
    """
    static inline int sc_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int sc_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline long long sc_mulmod(long long a, long long b, long long p) {
        return (long long)(((unsigned __int128)a * (unsigned __int128)b) % (unsigned __int128)p);
    }
    """
    bint sc_mul_ovf(long long a, long long b, long long *r) nogil
    bint sc_sub_ovf(long long a, long long b, long long *r) nogil
    long long sc_mulmod(long long a, long long b, long long p) nogil


cdef extern from "<algorithm>" namespace "std" nogil:
    void sort[Iter](Iter first, Iter last)


cdef inline void _sort_entries(vector[entry] &v):
    sort(v.begin(), v.end())


cdef inline int _find(int *parent, int u) noexcept nogil:
    while parent[u] != u:
        parent[u] = parent[parent[u]]
        u = parent[u]
    return u


def loop_histogram(crossings, int n_arcs):
    cdef cnp.ndarray[cnp.int64_t, ndim=2] xs = np.asarray(crossings, dtype=np.int64).reshape(-1, 4) - 1
    cdef int n = xs.shape[0]
    if n > 40:
        raise ValueError("too many crossings for a full state sum")
    cdef cnp.ndarray[cnp.int64_t, ndim=2] counts = np.zeros((n + 1, n_arcs + 2), dtype=np.int64)
    cdef vector[int] parent = vector[int](n_arcs)
    cdef vector[int] xa = vector[int](4 * n)
    cdef int i, j, u, v, loops, h
    cdef uint64_t mask, total = (<uint64_t>1) << n
    for i in range(n):
        for j in range(4):
            xa[4 * i + j] = <int>xs[i, j]
    with nogil:
        mask = 0
        while mask < total:
            for i in range(n_arcs):
                parent[i] = i
            loops = n_arcs
            h = 0
            for i in range(n):
                if (mask >> i) & 1:
                    h += 1
                    u = _find(&parent[0], xa[4 * i]); v = _find(&parent[0], xa[4 * i + 3])
                    if u != v:
                        parent[u] = v; loops -= 1
                    u = _find(&parent[0], xa[4 * i + 1]); v = _find(&parent[0], xa[4 * i + 2])
                    if u != v:
                        parent[u] = v; loops -= 1
                else:
                    u = _find(&parent[0], xa[4 * i]); v = _find(&parent[0], xa[4 * i + 1])
                    if u != v:
                        parent[u] = v; loops -= 1
                    u = _find(&parent[0], xa[4 * i + 2]); v = _find(&parent[0], xa[4 * i + 3])
                    if u != v:
                        parent[u] = v; loops -= 1
            counts[h, loops] += 1
            mask += 1
    return counts


cdef row_t _load_row(int64_t[::1] indptr, int64_t[::1] indices, int64_t[::1] data, Py_ssize_t r, int64_t p):
    # rows may hold repeated columns; sort and combine
    cdef row_t row
    cdef Py_ssize_t k
    cdef int64_t v
    cdef vector[entry] tmp
    for k in range(indptr[r], indptr[r + 1]):
        v = data[k]
        if p:
            v %= p
            if v < 0:
                v += p
        if v != 0:
            tmp.push_back(entry(indices[k], v))
    if tmp.size() == 0:
        return row
    _sort_entries(tmp)
    cdef Py_ssize_t i
    for i in range(<Py_ssize_t>tmp.size()):
        if row.size() and row.back().first == tmp[i].first:
            row.back().second += tmp[i].second
            if p:
                row.back().second %= p
        else:
            row.push_back(tmp[i])
    cdef row_t out
    for i in range(<Py_ssize_t>row.size()):
        if row[i].second != 0:
            out.push_back(row[i])
    return out




def rank_modp(indptr, indices, data, Py_ssize_t ncols, int64_t p):
    cdef int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int64_t[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef int64_t[::1] dv = np.ascontiguousarray(data, dtype=np.int64)
    cdef Py_ssize_t nrows = ip.shape[0] - 1
    cdef vector[row_t] pivots
    cdef vector[Py_ssize_t] pivot_of = vector[Py_ssize_t](ncols, -1)
    cdef row_t row, merged
    cdef Py_ssize_t r, i, j, k
    cdef int64_t lead, f, inv, v
    cdef Py_ssize_t rank = 0
    for r in range(nrows):
        row = _load_row(ip, ix, dv, r, p)
        while row.size():
            lead = row[0].first
            k = pivot_of[lead]
            if k < 0:
                inv = _powmod(row[0].second, p - 2, p)
                for i in range(<Py_ssize_t>row.size()):
                    row[i].second = sc_mulmod(row[i].second, inv, p)
                pivot_of[lead] = pivots.size()
                pivots.push_back(row)
                rank += 1
                break
            f = row[0].second
            merged.clear()
            i = 0
            j = 0
            while i < <Py_ssize_t>row.size() or j < <Py_ssize_t>pivots[k].size():
                if j >= <Py_ssize_t>pivots[k].size() or (i < <Py_ssize_t>row.size() and row[i].first < pivots[k][j].first):
                    merged.push_back(row[i]); i += 1
                elif i >= <Py_ssize_t>row.size() or pivots[k][j].first < row[i].first:
                    v = p - sc_mulmod(f, pivots[k][j].second, p)
                    if v != p:
                        merged.push_back(entry(pivots[k][j].first, v))
                    j += 1
                else:
                    v = (row[i].second + p - sc_mulmod(f, pivots[k][j].second, p)) % p
                    if v:
                        merged.push_back(entry(row[i].first, v))
                    i += 1; j += 1
            row.swap(merged)
    return rank


cdef int64_t _powmod(int64_t a, int64_t e, int64_t p):
    cdef int64_t result = 1
    a %= p
    while e > 0:
        if e & 1:
            result = sc_mulmod(result, a, p)
        a = sc_mulmod(a, a, p)
        e >>= 1
    return result


cdef inline int64_t _gcd(int64_t a, int64_t b) noexcept nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def rank_int(indptr, indices, data, Py_ssize_t ncols):
    """Exact rank over Q with 64-bit fraction-free elimination.

    Raises OverflowError if an intermediate entry leaves the 64-bit range;
    callers then retry with arbitrary-precision integers.
    """
    cdef int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef int64_t[::1] ix = np.ascontiguousarray(indices, dtype=np.int64)
    cdef int64_t[::1] dv = np.ascontiguousarray(data, dtype=np.int64)
    cdef Py_ssize_t nrows = ip.shape[0] - 1
    cdef vector[row_t] pivots
    cdef vector[Py_ssize_t] pivot_of = vector[Py_ssize_t](ncols, -1)
    cdef row_t row, merged
    cdef Py_ssize_t r, i, j, k
    cdef int64_t a, b, g, x, y
    cdef long long t1, t2, t3
    cdef Py_ssize_t rank = 0
    for r in range(nrows):
        row = _load_row(ip, ix, dv, r, 0)
        while row.size():
            k = pivot_of[row[0].first]
            if k < 0:
                pivot_of[row[0].first] = pivots.size()
                pivots.push_back(row)
                rank += 1
                break
            a = row[0].second
            b = pivots[k][0].second
            g = _gcd(a, b)
            a //= g
            b //= g
            merged.clear()
            i = 0
            j = 0
            while i < <Py_ssize_t>row.size() or j < <Py_ssize_t>pivots[k].size():
                if j >= <Py_ssize_t>pivots[k].size() or (i < <Py_ssize_t>row.size() and row[i].first < pivots[k][j].first):
                    if sc_mul_ovf(b, row[i].second, &t1):
                        raise OverflowError("64-bit overflow in elimination")
                    merged.push_back(entry(row[i].first, t1)); i += 1
                elif i >= <Py_ssize_t>row.size() or pivots[k][j].first < row[i].first:
                    if sc_mul_ovf(a, pivots[k][j].second, &t2) or sc_sub_ovf(0, t2, &t3):
                        raise OverflowError("64-bit overflow in elimination")
                    merged.push_back(entry(pivots[k][j].first, t3)); j += 1
                else:
                    if sc_mul_ovf(b, row[i].second, &t1) or sc_mul_ovf(a, pivots[k][j].second, &t2) or sc_sub_ovf(t1, t2, &t3):
                        raise OverflowError("64-bit overflow in elimination")
                    if t3 != 0:
                        merged.push_back(entry(row[i].first, t3))
                    i += 1; j += 1
            g = 0
            for i in range(<Py_ssize_t>merged.size()):
                g = _gcd(g, merged[i].second)
                if g == 1:
                    break
            if g > 1:
                for i in range(<Py_ssize_t>merged.size()):
                    merged[i].second //= g
            row.swap(merged)
    return rank
