"""Pure-Python versions of the compiled kernels in ``_speedups.pyx``.

Both modules expose the same functions with identical results; the
package picks one at import time (see ``knotua._kernels``).

Dense polynomials are lists of coefficients, lowest degree first.
Polynomials over F_p carry coefficients in ``range(p)`` and no trailing
zeros; the zero polynomial is ``[]``.
"""
from itertools import product


def convolve(a, b):
    """Coefficient list of the product of two dense integer polynomials."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def fp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _fp_trim(out)


def fp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _fp_trim(out)


def fp_divmod(a, b, p):
    """Quotient and remainder of a by b in F_p[t]; b must be nonzero."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) <= db:
        return [], _fp_trim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] % p
        if c:
            f = c * inv % p
            q[k - db] = f
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - f * b[j]) % p
    return _fp_trim(q), _fp_trim(r[:db])


def unit_shell(Q, r):
    """Vectors v with max|v_i| == r, first nonzero entry positive and
    |v^T Q v| == 1, in lexicographic order of the coordinates."""
    n = len(Q)
    hits = []
    for v in product(range(-r, r + 1), repeat=n):
        if max(abs(x) for x in v) != r:
            continue
        first = next(x for x in v if x)
        if first < 0:
            continue
        s = 0
        for i in range(n):
            vi = v[i]
            if vi:
                row = Q[i]
                s += vi * sum(row[j] * v[j] for j in range(n))
        if s == 1 or s == -1:
            hits.append(v)
    return hits
