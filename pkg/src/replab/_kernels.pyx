# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled convolution of weight tables.

Weights are packed into one signed 64-bit key per weight using a balanced
base, which turns weight addition into integer addition.  Inputs whose keys
or products could overflow go to the Python version.
"""

from libc.stdint cimport int64_t
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref, preincrement as inc

from ._kernels_py import convolve as _convolve_py

cdef int64_t LIMIT = (<int64_t>1) << 62


cdef int64_t _pack(tuple w, int64_t base):
    cdef int64_t key = 0, scale = 1
    cdef Py_ssize_t i
    for i in range(len(w)):
        key += (<int64_t>w[i]) * scale
        scale *= base
    return key


cdef tuple _unpack(int64_t key, Py_ssize_t n, int64_t base, int64_t half):
    cdef list out = [0] * n
    cdef int64_t r
    cdef Py_ssize_t i
    for i in range(n):
        r = key % base
        if r < 0:
            r += base
        if r > half:
            r -= base
        out[i] = r
        key = (key - r) // base
    return tuple(out)


def convolve(dict a, dict b):
    """Convolution of two weight tables {weight tuple: int}."""
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    cdef Py_ssize_t n = len(next(iter(a)))
    bound_a = max(max(abs(c) for c in w) if w else 0 for w in a)
    bound_b = max(max(abs(c) for c in w) if w else 0 for w in b)
    half = bound_a + bound_b
    base = 2 * half + 1
    mass = sum(abs(m) for m in a.values()) * sum(abs(m) for m in b.values())
    if n == 0 or base ** n >= LIMIT or mass >= LIMIT:
        return _convolve_py(a, b)

    cdef int64_t cbase = base, chalf = half
    cdef vector[int64_t] ka, ma, kb, mb
    for w, m in a.items():
        ka.push_back(_pack(w, cbase))
        ma.push_back(m)
    for w, m in b.items():
        kb.push_back(_pack(w, cbase))
        mb.push_back(m)

    cdef unordered_map[int64_t, int64_t] acc
    acc.reserve(ka.size() * 4)
    cdef size_t i, j
    cdef int64_t ki, mi
    with nogil:
        for i in range(ka.size()):
            ki = ka[i]
            mi = ma[i]
            for j in range(kb.size()):
                acc[ki + kb[j]] += mi * mb[j]

    cdef dict out = {}
    cdef unordered_map[int64_t, int64_t].iterator it = acc.begin()
    while it != acc.end():
        if deref(it).second != 0:
            out[_unpack(deref(it).first, n, cbase, chalf)] = deref(it).second
        inc(it)
    return out
