# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_pyspeedups`` for the reference semantics.

Fixed-width fast paths are taken only when the inputs provably fit in
64 bits; anything larger falls through to the pure-Python version so
results never depend on the backend.
"""
from libc.stdlib cimport malloc, free

from knotua import _pyspeedups

cdef long long _LIMIT = 1LL << 62


def convolve(a, b):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma * mb * min(na, nb) >= _LIMIT:
        return _pyspeedups.convolve(a, b)
    cdef long long *ca = <long long *> malloc(na * sizeof(long long))
    cdef long long *cb = <long long *> malloc(nb * sizeof(long long))
    cdef long long *out = <long long *> malloc((na + nb - 1) * sizeof(long long))
    cdef Py_ssize_t i, j
    cdef long long x
    try:
        for i in range(na):
            ca[i] = a[i]
        for j in range(nb):
            cb[j] = b[j]
        for i in range(na + nb - 1):
            out[i] = 0
        for i in range(na):
            x = ca[i]
            if x != 0:
                for j in range(nb):
                    out[i + j] += x * cb[j]
        return [out[i] for i in range(na + nb - 1)]
    finally:
        free(ca)
        free(cb)
        free(out)


cdef list _trim(long long *c, Py_ssize_t n):
    while n > 0 and c[n - 1] == 0:
        n -= 1
    return [c[i] for i in range(n)]


def fp_mul(a, b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    if na == 0 or nb == 0:
        return []
    if p >= (1LL << 31):
        return _pyspeedups.fp_mul(a, b, p)
    cdef long long *out = <long long *> malloc((na + nb - 1) * sizeof(long long))
    cdef long long *cb = <long long *> malloc(nb * sizeof(long long))
    cdef long long x
    try:
        for i in range(na + nb - 1):
            out[i] = 0
        for j in range(nb):
            cb[j] = b[j]
        for i in range(na):
            x = a[i]
            if x != 0:
                for j in range(nb):
                    out[i + j] = (out[i + j] + x * cb[j]) % p
        return _trim(out, na + nb - 1)
    finally:
        free(out)
        free(cb)


def fp_sub(a, b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), i
    cdef Py_ssize_t n = na if na > nb else nb
    if n == 0:
        return []
    cdef long long *out = <long long *> malloc(n * sizeof(long long))
    cdef long long x
    try:
        for i in range(n):
            x = 0
            if i < na:
                x += <long long> a[i]
            if i < nb:
                x -= <long long> b[i]
            x %= p
            if x < 0:
                x += p
            out[i] = x
        return _trim(out, n)
    finally:
        free(out)


def fp_divmod(a, b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), k, j
    if nb == 0:
        raise ZeroDivisionError("division by zero polynomial")
    if p >= (1LL << 31):
        return _pyspeedups.fp_divmod(a, b, p)
    cdef Py_ssize_t db = nb - 1
    if na <= db:
        return [], list(a)
    cdef long long inv = pow(b[nb - 1], -1, p)
    cdef long long *r = <long long *> malloc(na * sizeof(long long))
    cdef long long *cb = <long long *> malloc(nb * sizeof(long long))
    cdef long long *q = <long long *> malloc((na - db) * sizeof(long long))
    cdef long long c, f
    try:
        for k in range(na):
            r[k] = a[k]
        for j in range(nb):
            cb[j] = b[j]
        for k in range(na - db):
            q[k] = 0
        for k in range(na - 1, db - 1, -1):
            c = r[k] % p
            if c != 0:
                f = (c * inv) % p
                q[k - db] = f
                for j in range(db + 1):
                    r[k - db + j] = (r[k - db + j] - f * cb[j]) % p
                    if r[k - db + j] < 0:
                        r[k - db + j] += p
        return _trim(q, na - db), _trim(r, db)
    finally:
        free(r)
        free(cb)
        free(q)


def unit_shell(Q, int r):
    cdef Py_ssize_t n = len(Q), i, j
    if n == 0 or r <= 0:
        return _pyspeedups.unit_shell(Q, r)
    mq = max(abs(x) for row in Q for x in row)
    if mq * r * r * n * n >= _LIMIT or n > 64:
        return _pyspeedups.unit_shell(Q, r)
    cdef long long *cq = <long long *> malloc(n * n * sizeof(long long))
    cdef long long *v = <long long *> malloc(n * sizeof(long long))
    cdef long long s, row, sup, a
    cdef int first
    hits = []
    try:
        for i in range(n):
            for j in range(n):
                cq[i * n + j] = Q[i][j]
        for i in range(n):
            v[i] = -r
        while True:
            sup = 0
            first = 0
            for i in range(n):
                a = v[i] if v[i] >= 0 else -v[i]
                if a > sup:
                    sup = a
                if first == 0 and v[i] != 0:
                    first = 1 if v[i] > 0 else -1
            if sup == r and first > 0:
                s = 0
                for i in range(n):
                    if v[i] != 0:
                        row = 0
                        for j in range(n):
                            row += cq[i * n + j] * v[j]
                        s += v[i] * row
                if s == 1 or s == -1:
                    hits.append(tuple([v[i] for i in range(n)]))
            i = n - 1
            while i >= 0 and v[i] == r:
                v[i] = -r
                i -= 1
            if i < 0:
                break
            v[i] += 1
        return hits
    finally:
        free(cq)
        free(v)
