# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word rewriting kernel; same contract as _rewrite_py."""

import heapq

from cpython.bytes cimport PyBytes_AS_STRING, PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc
from libc.string cimport memcmp, memcpy


cdef Py_ssize_t _reduce(const unsigned char* src, Py_ssize_t n, unsigned char* out) nogil:
    cdef Py_ssize_t i, k = 0
    for i in range(n):
        if k and out[k - 1] == (src[i] ^ 1):
            k -= 1
        else:
            out[k] = src[i]
            k += 1
    return k


cdef Py_ssize_t _trim(const unsigned char* w, Py_ssize_t n, Py_ssize_t* first) nogil:
    cdef Py_ssize_t i = 0, j = n
    while j - i >= 2 and w[i] == (w[j - 1] ^ 1):
        i += 1
        j -= 1
    first[0] = i
    return j - i


cdef Py_ssize_t _least(const unsigned char* w, Py_ssize_t n) nogil:
    cdef Py_ssize_t best = 0, i, k
    cdef unsigned char a, b
    for i in range(1, n):
        for k in range(n):
            a = w[(i + k) % n]
            b = w[(best + k) % n]
            if a != b:
                if a < b:
                    best = i
                break
    return best


cdef bytes _canon(const unsigned char* w, Py_ssize_t n, unsigned char* scratch):
    cdef Py_ssize_t r = _least(w, n)
    memcpy(scratch, w + r, n - r)
    memcpy(scratch + n - r, w, r)
    return PyBytes_FromStringAndSize(<char*>scratch, n)


def free_reduce(bytes w):
    cdef Py_ssize_t n = len(w)
    cdef unsigned char* out = <unsigned char*>malloc(n + 1)
    try:
        n = _reduce(<const unsigned char*>PyBytes_AS_STRING(w), n, out)
        return PyBytes_FromStringAndSize(<char*>out, n)
    finally:
        free(out)


def cyclic_reduce(bytes w):
    cdef Py_ssize_t n = len(w), first = 0
    cdef unsigned char* out = <unsigned char*>malloc(n + 1)
    try:
        n = _reduce(<const unsigned char*>PyBytes_AS_STRING(w), n, out)
        n = _trim(out, n, &first)
        return PyBytes_FromStringAndSize(<char*>(out + first), n)
    finally:
        free(out)


def least_rotation(bytes w):
    cdef Py_ssize_t n = len(w)
    if n < 2:
        return w
    cdef unsigned char* out = <unsigned char*>malloc(n)
    try:
        return _canon(<const unsigned char*>PyBytes_AS_STRING(w), n, out)
    finally:
        free(out)


def search(bytes start, list rules, Py_ssize_t max_len, Py_ssize_t budget):
    """Best-first search for the empty word; returns (found, visited)."""
    cdef Py_ssize_t nr = len(rules), i, p, k, n, m, first, longest = 0
    cdef Py_ssize_t tick = 1
    by_first = [[] for _ in range(256)]
    pieces = []
    repls = []
    for i in range(nr):
        piece, repl = rules[i]
        pieces.append(piece)
        repls.append(repl)
        by_first[(<bytes>piece)[0]].append(i)
        longest = max(longest, len(repl), len(piece))

    cdef Py_ssize_t cap = max(max_len, len(start)) + longest + 8
    cdef unsigned char* dbl = <unsigned char*>malloc(2 * cap)
    cdef unsigned char* tmp = <unsigned char*>malloc(2 * cap)
    cdef unsigned char* red = <unsigned char*>malloc(2 * cap)
    cdef unsigned char* scratch = <unsigned char*>malloc(2 * cap)
    cdef const unsigned char* cw
    cdef const unsigned char* pc
    cdef bytes w, nxt, piece_b, repl_b
    try:
        n = _reduce(<const unsigned char*>PyBytes_AS_STRING(start), len(start), red)
        n = _trim(red, n, &first)
        if n == 0:
            return True, 1
        w0 = _canon(red + first, n, scratch)
        seen = {w0}
        heap = [(n, 0, w0)]
        while heap:
            _, _, w = heapq.heappop(heap)
            n = len(w)
            cw = <const unsigned char*>PyBytes_AS_STRING(w)
            memcpy(dbl, cw, n)
            memcpy(dbl + n, cw, n)
            for p in range(n):
                cands = by_first[dbl[p]]
                for i in cands:
                    piece_b = pieces[i]
                    k = len(piece_b)
                    if k > n:
                        continue
                    pc = <const unsigned char*>PyBytes_AS_STRING(piece_b)
                    if memcmp(dbl + p, pc, k) != 0:
                        continue
                    repl_b = repls[i]
                    m = len(repl_b)
                    memcpy(tmp, PyBytes_AS_STRING(repl_b), m)
                    memcpy(tmp + m, dbl + p + k, n - k)
                    m = _reduce(tmp, m + n - k, red)
                    m = _trim(red, m, &first)
                    if m == 0:
                        return True, len(seen)
                    if m > max_len:
                        continue
                    nxt = _canon(red + first, m, scratch)
                    if nxt in seen:
                        continue
                    seen.add(nxt)
                    if len(seen) >= budget:
                        return False, len(seen)
                    heapq.heappush(heap, (m, tick, nxt))
                    tick += 1
        return False, len(seen)
    finally:
        free(dbl)
        free(tmp)
        free(red)
        free(scratch)
