"""Finite algebras over GF(p): radical and semisimple decomposition.

These routines work on structure constants reduced mod ``p`` (typically
those of ``O/pO`` for an order ``O``).  Vectors are lists of ints in
``[0, p)``.
"""

from dataclasses import dataclass
from math import isqrt

from sympy import ZZ
from sympy.polys.galoistools import gf_factor_sqf

from .kernels import matmul_mod, nullspace_mod_p, rref_mod_p


class FpAlgebra:
    """An associative unital algebra over GF(p) given by dense constants.

    ``struct[i][j]`` is the coordinate vector of ``e_i * e_j``.
    """

    def __init__(self, p, struct, unit):
        self.p = p
        self.dim = len(struct)
        self.struct = [[[c % p for c in v] for v in row] for row in struct]
        self.unit = [c % p for c in unit]

    def mul(self, x, y):
        p, n = self.p, self.dim
        acc = [0] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.struct[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for k, s in enumerate(row[j]):
                    if s:
                        acc[k] += c * s
        return [a % p for a in acc]

    def basis_element(self, i):
        v = [0] * self.dim
        v[i] = 1
        return v

    def right_matrix(self, x):
        return [self.mul(self.basis_element(i), x) for i in range(self.dim)]

    def power(self, x, e):
        out = list(self.unit)
        base = list(x)
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def span(self, vectors):
        """RREF basis of the span of ``vectors``."""
        if not vectors:
            return []
        red, _ = rref_mod_p(vectors, self.dim, self.p)
        return red


def _combine(p, coeffs, vectors, n):
    acc = [0] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k in range(n):
                acc[k] += c * v[k]
    return [a % p for a in acc]


def _matrix_power_trace(x, e, modulus):
    n = len(x)
    result = None
    base = x
    while e:
        if e & 1:
            result = base if result is None else matmul_mod(result, base, modulus)
        e >>= 1
        if e:
            base = matmul_mod(base, base, modulus)
    return sum(result[i][i] for i in range(n)) % modulus


def radical(B: FpAlgebra):
    """RREF basis of the Jacobson radical of ``B``.

    Uses the chain of p-power trace kernels over the prime field: starting
    from ``I = B``, level ``i`` keeps those ``a`` with
    ``Tr(rho(ab)^(p^i)) / p^i == 0 (mod p)`` for all basis ``b``, lifting
    matrices to integers; after ``floor(log_p dim)`` levels ``I = J(B)``.
    """
    p, n = B.p, B.dim
    levels = 0
    while p ** (levels + 1) <= n:
        levels += 1
    current = [B.basis_element(i) for i in range(n)]
    for i in range(levels + 1):
        if not current:
            break
        q = p ** i
        modulus = p ** (i + 1)
        table = []
        for a in current:
            row = []
            for t in range(n):
                x = B.right_matrix(B.mul(a, B.basis_element(t)))
                tr = _matrix_power_trace(x, q, modulus)
                if tr % q:
                    raise ArithmeticError("trace not divisible at radical level %d" % i)
                row.append((tr // q) % p)
            table.append(row)
        coeffs = nullspace_mod_p(table, n, p)
        current = [_combine(p, c, current, n) for c in coeffs]
    return B.span(current)


@dataclass
class Quotient:
    """``B / I`` with a fixed complement basis on the non-pivot columns."""

    algebra: FpAlgebra
    ideal_rref: list
    pivots: list
    free_cols: list

    def project(self, v):
        p = self.algebra.p
        w = [c % p for c in v]
        for row, pc in zip(self.ideal_rref, self.pivots):
            f = w[pc]
            if f:
                w = [(a - f * b) % p for a, b in zip(w, row)]
        return [w[c] for c in self.free_cols]

    def lift(self, s):
        v = [0] * len(self.pivots + self.free_cols)
        for c, x in zip(self.free_cols, s):
            v[c] = x
        return v


def quotient(B: FpAlgebra, ideal_basis):
    """Quotient of ``B`` by a two-sided ideal; returns ``(S, Quotient)``."""
    n = B.dim
    if ideal_basis:
        red, pivots = rref_mod_p(ideal_basis, n, B.p)
    else:
        red, pivots = [], []
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    q = Quotient(B, red, pivots, free)
    struct = [[q.project(B.struct[a][b]) for b in free] for a in free]
    unit = q.project(B.unit)
    return FpAlgebra(B.p, struct, unit), q


def center(S: FpAlgebra):
    """Basis of the center of ``S``."""
    n = S.dim
    if n == 0:
        return []
    # matrix row k: flattened [e_k e_t - e_t e_k]_t
    mat = []
    for k in range(n):
        row = []
        for t in range(n):
            row.extend((a - b) % S.p for a, b in zip(S.struct[k][t], S.struct[t][k]))
        mat.append(row)
    coeffs = nullspace_mod_p(mat, n * n, S.p)
    return S.span([_combine(S.p, c, [S.basis_element(i) for i in range(n)], n) for c in coeffs])


def _min_poly_roots(S: FpAlgebra, e, x):
    """Roots of the minimal polynomial of ``x`` in the unital algebra ``eS``.

    ``x`` must be split semisimple (lie in a product of copies of GF(p)).
    """
    p = S.p
    powers = [list(e)]
    while True:
        nxt = S.mul(powers[-1], x)
        cand = powers + [nxt]
        rel = nullspace_mod_p(cand, S.dim, p)
        if rel:
            c = rel[0]
            lead = c[-1]
            inv = pow(lead, -1, p)
            coeffs = [(a * inv) % p for a in c]  # ascending, monic
            break
        powers.append(nxt)
    poly = [ZZ(c) for c in reversed(coeffs)]
    _, factors = gf_factor_sqf(poly, p, ZZ)
    roots = []
    for f in factors:
        if len(f) != 2:
            raise ArithmeticError("element does not split over the prime field")
        # f = x + f1 (monic)
        roots.append(int(-f[1]) % p)
    return sorted(roots)


def central_idempotents(S: FpAlgebra):
    """Primitive central idempotents of the semisimple algebra ``S``.

    The Frobenius-fixed part of the center is spanned by these idempotents;
    they are found by splitting along the roots of minimal polynomials of a
    basis of that part.
    """
    p, n = S.p, S.dim
    if n == 0:
        return []
    cen = center(S)
    diffs = [[(a - b) % p for a, b in zip(S.power(z, p), z)] for z in cen]
    coeffs = nullspace_mod_p(diffs, n, p)
    fixed = [_combine(p, c, cen, n) for c in coeffs]
    idems = [list(S.unit)]
    for f in fixed:
        refined = []
        for e in idems:
            x = S.mul(f, e)
            roots = _min_poly_roots(S, e, x)
            if len(roots) == 1:
                refined.append(e)
                continue
            for r in roots:
                part = list(e)
                for c in roots:
                    if c == r:
                        continue
                    factor = [(a - c * b) % p for a, b in zip(x, e)]
                    scale = pow((r - c) % p, -1, p)
                    part = [(v * scale) % p for v in S.mul(part, factor)]
                refined.append(part)
        idems = refined
    if len(idems) != len(fixed):
        raise ArithmeticError("central idempotent splitting did not converge")
    return idems


@dataclass
class SimpleComponent:
    idempotent: list  # in S coordinates
    residue_dim: int
    center_dim: int
    capacity: int


def simple_components(S: FpAlgebra):
    comps = []
    cen = center(S)
    for e in central_idempotents(S):
        r = len(S.span([S.mul(S.basis_element(i), e) for i in range(S.dim)]))
        c = len(S.span([S.mul(z, e) for z in cen]))
        k2, rem = divmod(r, c)
        k = isqrt(k2)
        if rem or k * k != k2:
            raise ArithmeticError("simple component dimension is not capacity^2 * center")
        comps.append(SimpleComponent(e, r, c, k))
    return comps


def is_nilpotent_ideal(B: FpAlgebra, basis):
    """Whether the span of ``basis`` (assumed an ideal) is nilpotent."""
    power = B.span(basis)
    for _ in range(B.dim + 1):
        if not power:
            return True
        power = B.span([B.mul(a, b) for a in power for b in basis])
    return not power
