# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
# distutils: language = c++
"""Compiled hot loops: fiber-product joins, collision search, triple counting."""
import numpy as np
cimport numpy as cnp
from libcpp.unordered_map cimport unordered_map
from libcpp.pair cimport pair
from cython.operator cimport dereference as deref

cnp.import_array()

ctypedef cnp.int64_t i64


def fiber_join(const i64[:, ::1] rows, const i64[::1] keys, const i64[::1] offsets, const i64[::1] items):
    cdef Py_ssize_t R = rows.shape[0], c = rows.shape[1]
    cdef Py_ssize_t r, p, q, total = 0, out_row = 0
    cdef i64 k
    for r in range(R):
        k = keys[r]
        total += offsets[k + 1] - offsets[k]
    out = np.empty((total, c + 1), dtype=np.int64)
    cdef i64[:, ::1] o = out
    for r in range(R):
        k = keys[r]
        for p in range(offsets[k], offsets[k + 1]):
            for q in range(c):
                o[out_row, q] = rows[r, q]
            o[out_row, c] = items[p]
            out_row += 1
    return out


def first_repeat(const i64[::1] keys):
    cdef unordered_map[i64, Py_ssize_t] seen
    cdef unordered_map[i64, Py_ssize_t].iterator it
    cdef Py_ssize_t j, n = keys.shape[0]
    seen.reserve(n)
    for j in range(n):
        it = seen.find(keys[j])
        if it != seen.end():
            return int(deref(it).second), int(j)
        seen[keys[j]] = j
    return -1, -1


def count_triples(const i64[::1] a, const i64[::1] b, const i64[::1] c, i64 na, i64 nb, i64 nc):
    cdef unordered_map[i64, i64] counts
    cdef Py_ssize_t k, n = a.shape[0]
    cdef i64 key
    for k in range(n):
        key = (a[k] * nb + b[k]) * nc + c[k]
        counts[key] += 1
    out = {}
    cdef pair[i64, i64] entry
    for entry in counts:
        key = entry.first
        out[(int(key // (nb * nc)), int((key // nc) % nb), int(key % nc))] = int(entry.second)
    return out
