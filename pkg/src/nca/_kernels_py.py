"""Pure-Python modular kernels.

Reference implementations of the routines in ``_kernels.pyx``.  They accept
and return plain lists of Python ints and work for any modulus; the compiled
versions are only used when the modulus fits machine words.
"""


def hnf_mod(rows, ncols, m):
    """Hermite basis of ``span(rows) + m*Z^ncols``.

    Returns ``ncols`` rows forming an upper-triangular basis: pivot ``i`` sits
    in column ``i`` and divides ``m``, entries above each pivot lie in
    ``[0, pivot)`` and all other entries are reduced into ``[0, m)``.
    """
    work = [[x % m for x in r] for r in rows]
    work = [r for r in work if any(r)]
    basis = []
    for i in range(ncols):
        piv = [0] * ncols
        piv[i] = m
        rest = []
        for r in work:
            a = r[i]
            if a == 0:
                rest.append(r)
                continue
            b = piv[i]
            # extended gcd of (b, a)
            g, s, t = _xgcd(b, a)
            bg, ag = b // g, a // g
            new_piv = [(s * x + t * y) for x, y in zip(piv, r)]
            new_r = [(bg * y - ag * x) % m for x, y in zip(piv, r)]
            for j in range(i + 1, ncols):
                new_piv[j] %= m
            new_piv[i] = g
            piv = new_piv
            if any(new_r):
                rest.append(new_r)
        g = piv[i]
        # (m/g) * piv has m in column i; the tail must stay in the lattice
        tail = [0] * ncols
        mg = m // g
        for j in range(i + 1, ncols):
            tail[j] = (mg * piv[j]) % m
        if any(tail):
            rest.append(tail)
        for j in range(i + 1, ncols):
            piv[j] %= m
        for j in range(i):
            piv[j] = 0
        basis.append(piv)
        work = rest
    for i in range(ncols):
        pi = basis[i][i]
        for k in range(i):
            q = basis[k][i] // pi
            if q:
                rk = basis[k]
                ri = basis[i]
                for j in range(i, ncols):
                    rk[j] -= q * ri[j]
                for j in range(i + 1, ncols):
                    rk[j] %= m
    return basis


def rref_mod_p(rows, ncols, p):
    """Reduced row echelon form over GF(p).

    Returns ``(rref_rows, pivot_columns)``; zero rows are dropped.
    """
    mat = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        if r == nrows:
            break
        sel = None
        for k in range(r, nrows):
            if mat[k][c]:
                sel = k
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = pow(mat[r][c], -1, p)
        row = mat[r]
        for j in range(c, ncols):
            row[j] = row[j] * inv % p
        for k in range(nrows):
            if k != r:
                f = mat[k][c]
                if f:
                    rk = mat[k]
                    for j in range(c, ncols):
                        rk[j] = (rk[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return mat[:r], pivots


def matmul_mod(a, b, m):
    """Product of integer matrices modulo ``m``."""
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * ncols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(ncols):
                    acc[j] += x * bk[j]
        out.append([v % m for v in acc])
    return out


def _xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0
