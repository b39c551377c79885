# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the brute-force oracle kernels (see _pykernels)."""

from array import array


def nash_mask(pay, shape, double tol):
    cdef double[:] p = array("d", pay)
    cdef Py_ssize_t n_players = len(shape)
    cdef Py_ssize_t n = 1, i, q, a, stride, own, start, base
    cdef double mine
    cdef bint ok
    for d in shape:
        n *= d
    cdef long long[:] sh = array("q", shape)
    cdef long long[:] strides = array("q", [1] * n_players)
    for q in range(n_players - 2, -1, -1):
        strides[q] = strides[q + 1] * sh[q + 1]
    out = bytearray(n)
    cdef unsigned char[:] o = out
    for i in range(n):
        ok = True
        for q in range(n_players):
            base = q * n
            stride = strides[q]
            own = (i // stride) % sh[q]
            start = i - own * stride
            mine = p[base + i]
            for a in range(sh[q]):
                if p[base + start + a * stride] > mine + tol:
                    ok = False
                    break
            if not ok:
                break
        o[i] = ok
    return out


def spe_pairs(u1, u2, Py_ssize_t n1, Py_ssize_t n2, double tol):
    cdef double[:] v1 = array("d", u1)
    cdef double[:] v2 = array("d", u2)
    cdef long long[:] table = array("q", [0] * n1)
    cdef double[:] vals = array("d", [0.0] * n1)
    cdef Py_ssize_t a, b, j, t, n_tables = 1
    cdef double mine, best
    cdef bint follower_ok
    for a in range(n1):
        n_tables *= n2
    out = []
    for t in range(n_tables):
        follower_ok = True
        for a in range(n1):
            mine = v2[a * n2 + table[a]]
            for b in range(n2):
                if v2[a * n2 + b] > mine + tol:
                    follower_ok = False
                    break
            if not follower_ok:
                break
        if follower_ok:
            best = v1[table[0]]
            for a in range(n1):
                vals[a] = v1[a * n2 + table[a]]
                if vals[a] > best:
                    best = vals[a]
            for a in range(n1):
                if vals[a] >= best - tol:
                    out.append((a, tuple(table)))
        j = n1 - 1
        while j >= 0:
            table[j] += 1
            if table[j] < n2:
                break
            table[j] = 0
            j -= 1
    out.sort()
    return out
