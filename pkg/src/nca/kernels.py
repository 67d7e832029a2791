"""Backend selection for the modular kernels.

The compiled extension is used when it imported successfully and the modulus
is below ``2**31``; everything else goes through the pure-Python code.  Set
``NCA_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

WORD_LIMIT = 1 << 31

_compiled = None
if not os.environ.get("NCA_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def _pick(m):
    if _compiled is not None and 1 < m < WORD_LIMIT:
        return _compiled
    return _kernels_py


def hnf_mod(rows, ncols, m):
    if ncols == 0:
        return []
    if _compiled is not None and 1 < m < WORD_LIMIT:
        rows = [[x % m for x in r] for r in rows]
    return _pick(m).hnf_mod(rows, ncols, m)


def rref_mod_p(rows, ncols, p):
    if _compiled is not None and 1 < p < WORD_LIMIT:
        rows = [[x % p for x in r] for r in rows]
    return _pick(p).rref_mod_p(rows, ncols, p)


def matmul_mod(a, b, m):
    if not a or not b:
        return [[] for _ in a]
    if _compiled is not None and 1 < m < WORD_LIMIT:
        a = [[x % m for x in r] for r in a]
        b = [[x % m for x in r] for r in b]
    return _pick(m).matmul_mod(a, b, m)


def nullspace_mod_p(rows, ncols, p):
    """Basis of ``{x : x @ rows == 0}`` over GF(p), as a list of vectors.

    ``rows`` is a ``k x ncols`` matrix; the returned vectors have length ``k``.
    """
    k = len(rows)
    if k == 0:
        return []
    # left kernel of M = right kernel of M^T
    mt = [[rows[i][j] for i in range(k)] for j in range(ncols)]
    if not mt:
        return [[1 if i == j else 0 for i in range(k)] for j in range(k)]
    red, pivots = rref_mod_p(mt, k, p)
    pivset = set(pivots)
    basis = []
    for free in range(k):
        if free in pivset:
            continue
        v = [0] * k
        v[free] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[free]) % p
        basis.append(v)
    return basis
