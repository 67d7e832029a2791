# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular kernels (moduli below 2**31).

Same contracts as ``nca._kernels_py``; entries are held in C ``long long``
so every product of two reduced residues fits without overflow.
"""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 _mod(i64 a, i64 m) nogil:
    cdef i64 r = a % m
    if r < 0:
        r += m
    return r


cdef inline void _xgcd(i64 a, i64 b, i64* g, i64* s, i64* t) nogil:
    cdef i64 s0 = 1, s1 = 0, t0 = 0, t1 = 1, q, r, tmp
    while b != 0:
        q = a // b
        r = a - q * b
        a = b
        b = r
        tmp = s0 - q * s1
        s0 = s1
        s1 = tmp
        tmp = t0 - q * t1
        t0 = t1
        t1 = tmp
    if a < 0:
        g[0] = -a
        s[0] = -s0
        t[0] = -t0
    else:
        g[0] = a
        s[0] = s0
        t[0] = t0


def hnf_mod(rows, int ncols, long long m):
    cdef Py_ssize_t nrows = len(rows)
    cdef cnp.ndarray[i64, ndim=2] work = np.zeros((nrows + ncols, ncols), dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=2] basis = np.zeros((ncols, ncols), dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] piv = np.zeros(ncols, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] nrow = np.zeros(ncols, dtype=np.int64)
    cdef Py_ssize_t k, j, i, nwork = 0, nkeep
    cdef i64 a, b, g, s, t, bg, ag, x, y, q, pi, mg
    cdef bint nonzero
    for k in range(nrows):
        r = rows[k]
        nonzero = False
        for j in range(ncols):
            x = _mod(r[j] % m, m)
            work[nwork, j] = x
            if x:
                nonzero = True
        if nonzero:
            nwork += 1
    with nogil:
        for i in range(ncols):
            for j in range(ncols):
                piv[j] = 0
            piv[i] = m
            nkeep = 0
            for k in range(nwork):
                a = work[k, i]
                if a == 0:
                    if nkeep != k:
                        for j in range(i, ncols):
                            work[nkeep, j] = work[k, j]
                    nkeep += 1
                    continue
                b = piv[i]
                _xgcd(b, a, &g, &s, &t)
                bg = b // g
                ag = a // g
                nonzero = False
                for j in range(i + 1, ncols):
                    x = piv[j]
                    y = work[k, j]
                    nrow[j] = _mod(_mod(bg * y, m) - _mod(ag * x, m), m)
                    piv[j] = _mod(_mod(_mod(s, m) * x, m) + _mod(_mod(t, m) * y, m), m)
                    if nrow[j]:
                        nonzero = True
                piv[i] = g
                if nonzero:
                    for j in range(i + 1, ncols):
                        work[nkeep, j] = nrow[j]
                    work[nkeep, i] = 0
                    nkeep += 1
            g = piv[i]
            mg = m // g
            nonzero = False
            for j in range(i + 1, ncols):
                nrow[j] = _mod(mg * piv[j], m)
                if nrow[j]:
                    nonzero = True
            if nonzero:
                for j in range(i + 1, ncols):
                    work[nkeep, j] = nrow[j]
                work[nkeep, i] = 0
                nkeep += 1
            for j in range(ncols):
                basis[i, j] = piv[j]
            nwork = nkeep
        for i in range(ncols):
            pi = basis[i, i]
            for k in range(i):
                q = basis[k, i] // pi
                if q:
                    basis[k, i] -= q * pi
                    for j in range(i + 1, ncols):
                        basis[k, j] = _mod(basis[k, j] - _mod(q * basis[i, j], m), m)
    return [[int(basis[i, j]) for j in range(ncols)] for i in range(ncols)]


def rref_mod_p(rows, int ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef cnp.ndarray[i64, ndim=2] mat = np.zeros((max(nrows, 1), ncols), dtype=np.int64)
    cdef Py_ssize_t r = 0, c, k, j, sel
    cdef i64 inv, f, tmp
    for k in range(nrows):
        row = rows[k]
        for j in range(ncols):
            mat[k, j] = _mod(row[j] % p, p)
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        sel = -1
        for k in range(r, nrows):
            if mat[k, c]:
                sel = k
                break
        if sel < 0:
            continue
        if sel != r:
            for j in range(ncols):
                tmp = mat[r, j]
                mat[r, j] = mat[sel, j]
                mat[sel, j] = tmp
        inv = pow(int(mat[r, c]), -1, p)
        with nogil:
            for j in range(c, ncols):
                mat[r, j] = _mod(mat[r, j] * inv, p)
            for k in range(nrows):
                if k != r:
                    f = mat[k, c]
                    if f:
                        for j in range(c, ncols):
                            mat[k, j] = _mod(mat[k, j] - _mod(f * mat[r, j], p), p)
        pivots.append(c)
        r += 1
    return [[int(mat[k, j]) for j in range(ncols)] for k in range(r)], pivots


def matmul_mod(a, b, long long m):
    cdef cnp.ndarray[i64, ndim=2] A = np.asarray(a, dtype=np.int64) % m
    cdef cnp.ndarray[i64, ndim=2] B = np.asarray(b, dtype=np.int64) % m
    cdef Py_ssize_t n = A.shape[0], l = A.shape[1], w = B.shape[1], i, j, k
    cdef cnp.ndarray[i64, ndim=2] C = np.zeros((n, w), dtype=np.int64)
    cdef i64 x
    with nogil:
        for i in range(n):
            for k in range(l):
                x = A[i, k]
                if x:
                    for j in range(w):
                        C[i, j] = (C[i, j] + x * B[k, j]) % m
    return [[int(C[i, j]) for j in range(w)] for i in range(n)]
