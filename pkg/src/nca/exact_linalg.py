"""Exact integer and rational matrix algebra, and lattices in Q^n.

Matrices are plain lists of rows.  Integer matrices hold Python ints,
rational ones hold :class:`fractions.Fraction`.  Vectors are rows and maps
act on the right (``v @ M``), which matches how lattice bases are stored.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

Rat = Fraction


class LatticeError(ValueError):
    pass


def rat(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rat_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def identity(n, one=1):
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    if not a:
        return []
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * ncols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(ncols):
                    acc[j] += x * bk[j]
        out.append(acc)
    return out


def vecmat(v, m):
    ncols = len(m[0]) if m else 0
    acc = [0] * ncols
    for k, x in enumerate(v):
        if x:
            mk = m[k]
            for j in range(ncols):
                acc[j] += x * mk[j]
    return acc


def common_denominator(rows) -> int:
    d = 1
    for r in rows:
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                d = lcm(d, x.denominator)
    return d


def to_integer_rows(rows):
    """Scale rational rows by one common denominator; return ``(ints, d)``."""
    d = common_denominator(rows)
    return [[int(Fraction(x) * d) for x in r] for r in rows], d


# ---------------------------------------------------------------- determinants

def _bareiss_det(m):
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri = a[i]
            rk = a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def det(m) -> Fraction:
    """Exact determinant of a square integer or rational matrix."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    rows = []
    for r in m:
        d = common_denominator([r])
        rows.append([int(Fraction(x) * d) for x in r])
        scale /= d
    return scale * _bareiss_det(rows)


# ------------------------------------------------------- rational elimination

def rref(rows, ncols=None):
    """Reduced row echelon form over Q; returns ``(rows, pivots)``."""
    mat = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        sel = next((k for k in range(r, len(mat)) if mat[k][c] != 0), None)
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = 1 / mat[r][c]
        row = [x * inv for x in mat[r]]
        mat[r] = row
        for k in range(len(mat)):
            if k != r and mat[k][c] != 0:
                f = mat[k][c]
                mat[k] = [x - f * y for x, y in zip(mat[k], row)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def rational_kernel(m) -> list:
    """Basis (rows) of the left kernel ``{x : x @ m == 0}``."""
    nrows = len(m)
    if nrows == 0:
        return []
    ncols = len(m[0])
    if ncols == 0:
        return identity(nrows, Fraction(1))
    red, pivots = rref(transpose(m), nrows)
    pivset = set(pivots)
    basis = []
    for free in range(nrows):
        if free in pivset:
            continue
        v = [Fraction(0)] * nrows
        v[free] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def inverse(m):
    n = len(m)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(m)]
    red, pivots = rref(aug, n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def solve_left(basis, v):
    """Coordinates ``c`` with ``c @ basis == v`` (basis rows independent).

    Returns ``None`` if ``v`` is not in the row space.
    """
    k = len(basis)
    n = len(v)
    aug = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    c = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        c[pc] = row[k]
    return c


# --------------------------------------------------------------- normal forms

def hnf(m):
    """Row Hermite normal form ``(H, U)`` with ``U @ M == H``, U unimodular.

    Nonzero rows of H come first, pivots are positive and strictly move right,
    and entries above a pivot lie in ``[0, pivot)``.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    h = [list(map(int, r)) for r in m]
    u = identity(nrows)
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if h[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            if p != r:
                h[p], h[r] = h[r], h[p]
                u[p], u[r] = u[r], u[p]
            clean = True
            prow, purow = h[r], u[r]
            pv = prow[c]
            for i in range(r + 1, nrows):
                x = h[i][c]
                if x == 0:
                    continue
                q = x // pv
                hi, ui = h[i], u[i]
                for j in range(c, ncols):
                    hi[j] -= q * prow[j]
                for j in range(nrows):
                    ui[j] -= q * purow[j]
                if hi[c] != 0:
                    clean = False
            if clean:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        pv = h[r][c]
        for i in range(r):
            q = h[i][c] // pv
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def hnf_basis(rows, ncols=None):
    """Nonzero rows of the HNF of an integer matrix (a canonical basis)."""
    if not rows:
        return []
    h, _ = hnf(rows)
    return [row for row in h if any(row)]


def snf(m):
    """Smith normal form ``(D, U, V)`` with ``U @ M @ V == D``.

    Diagonal entries are nonnegative with ``d_1 | d_2 | ...``.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    a = [list(map(int, r)) for r in m]
    u = identity(nrows)
    v = identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(nrows, ncols):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            pv = a[t][t]
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // pv))
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // pv))
            cand = [(abs(a[i][t]), i, t) for i in range(t + 1, nrows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t + 1, ncols) if a[t][j]]
            if cand:
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, nrows) for j in range(t + 1, ncols)
                        if a[i][j] % pv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def elementary_divisors(m):
    d, _, _ = snf(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def integer_left_kernel(m):
    """Basis of the saturated lattice ``{x in Z^r : x @ M == 0}``."""
    nrows = len(m)
    if nrows == 0:
        return []
    if not m[0]:
        return identity(nrows)
    h, u = hnf(m)
    return [u[i] for i in range(nrows) if not any(h[i])]


# ------------------------------------------------------------------- lattices

@dataclass(frozen=True)
class ZLattice:
    """The lattice spanned by ``basis / denom`` inside ``Q^ambient_dim``.

    ``basis`` is kept in row HNF and ``denom`` is minimal, so two lattices are
    equal exactly when their fields are.
    """

    ambient_dim: int
    basis: tuple
    denom: int = 1

    @classmethod
    def from_rows(cls, rows, ambient_dim=None) -> "ZLattice":
        rows = [list(r) for r in rows]
        if ambient_dim is None:
            if not rows:
                raise LatticeError("ambient dimension required for an empty lattice")
            ambient_dim = len(rows[0])
        if any(len(r) != ambient_dim for r in rows):
            raise LatticeError("ragged generator rows")
        ints, d = to_integer_rows(rows)
        basis = hnf_basis(ints)
        g = reduce(gcd, (x for r in basis for x in r), d)
        if g > 1:
            basis = [[x // g for x in r] for r in basis]
            d //= g
        return cls(ambient_dim, tuple(tuple(r) for r in basis), d)

    @classmethod
    def standard(cls, n) -> "ZLattice":
        return cls(n, tuple(tuple(r) for r in identity(n)), 1)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full(self) -> bool:
        return self.rank == self.ambient_dim

    def rational_basis(self):
        d = self.denom
        return [[Fraction(x, d) for x in r] for r in self.basis]

    def coordinates(self, v):
        """Coordinates of ``v`` in the lattice basis, or ``None`` if outside."""
        return solve_left(self.rational_basis(), v)

    def contains(self, v) -> bool:
        c = self.coordinates(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def contains_lattice(self, other: "ZLattice") -> bool:
        return all(self.contains(r) for r in other.rational_basis())

    def __add__(self, other: "ZLattice") -> "ZLattice":
        if self.ambient_dim != other.ambient_dim:
            raise LatticeError("ambient dimension mismatch")
        return ZLattice.from_rows(self.rational_basis() + other.rational_basis(), self.ambient_dim)

    def scaled(self, c) -> "ZLattice":
        c = Fraction(c)
        return ZLattice.from_rows([[x * c for x in r] for r in self.rational_basis()], self.ambient_dim)

    def transformed(self, m) -> "ZLattice":
        """Image under the linear map ``v -> v @ m``."""
        rows = matmul(self.rational_basis(), m)
        return ZLattice.from_rows(rows, len(m[0]) if m else 0)


def lattice_intersect_subspace(lat: ZLattice, span) -> ZLattice:
    """``lat`` intersected with the Q-span of the rows of ``span``."""
    n = lat.ambient_dim
    span = [list(r) for r in span if any(r)]
    if not span:
        return ZLattice(n, (), 1)
    # columns of ann span the right kernel of span: v in span  <=>  v @ ann == 0
    ann = transpose(rational_kernel(transpose(span)))
    if not ann:
        return lat
    b = lat.rational_basis()
    tests, _ = to_integer_rows(matmul(b, ann))
    coeffs = integer_left_kernel(tests)
    rows = matmul(coeffs, b) if coeffs else []
    if not rows:
        return ZLattice(n, (), 1)
    return ZLattice.from_rows(rows, n)


def generalized_index(l1: ZLattice, l2: ZLattice) -> Fraction:
    """``|det T|`` where ``T`` writes the basis of ``l2`` in that of ``l1``.

    Both lattices must have the same rank and span the same subspace (for
    full lattices this is automatic).  Equals ``[l1 : l2]`` when nested.
    """
    if l1.ambient_dim != l2.ambient_dim:
        raise LatticeError("ambient dimension mismatch")
    if l1.rank != l2.rank:
        raise LatticeError("lattices of different rank")
    b1 = l1.rational_basis()
    t = []
    for r in l2.rational_basis():
        c = solve_left(b1, r)
        if c is None:
            raise LatticeError("lattices span different subspaces")
        t.append(c)
    return abs(det(t))


def dual_lattice(lat: ZLattice, form) -> ZLattice:
    """``{x : x @ form @ l^T in Z for every l in lat}`` for a full lattice."""
    if not lat.is_full:
        raise LatticeError("dual of a non-full lattice")
    b = lat.rational_basis()
    pairing = matmul(form, transpose(b))  # n x n
    if det(pairing) == 0:
        raise LatticeError("singular bilinear form")
    return ZLattice.from_rows(inverse(pairing), lat.ambient_dim)


def gram_matrix(vectors, form):
    return matmul(matmul(vectors, form), transpose(vectors))


def gram_det(vectors, form) -> Fraction:
    """Determinant of ``[B(v_i, v_j)]``."""
    if not vectors:
        return Fraction(1)
    return det(gram_matrix(vectors, form))


def coordinate_matrix(outer: ZLattice, inner: ZLattice):
    """Rows: coordinates of the basis of ``inner`` in the basis of ``outer``."""
    b = outer.rational_basis()
    rows = []
    for r in inner.rational_basis():
        c = solve_left(b, r)
        if c is None:
            raise LatticeError("lattice is not contained in the outer span")
        rows.append(c)
    return rows


def quotient_group_order(l1: ZLattice, l2: ZLattice) -> int:
    """``#(l1 / l2)`` for full lattices ``l2 <= l1``, via Smith divisors."""
    if not (l1.is_full and l2.is_full):
        raise LatticeError("quotient order requires full lattices")
    t = coordinate_matrix(l1, l2)
    if any(x.denominator != 1 for r in t for x in r):
        raise LatticeError("second lattice is not contained in the first")
    divs = elementary_divisors([[int(x) for x in r] for r in t])
    out = 1
    for d in divs:
        out *= d
    return out


def block_diagonal(blocks):
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            for j in range(k):
                out[off + i][off + j] = b[i][j]
        off += k
    return out


def leading_minors_positive(m) -> bool:
    """Exact positive-definiteness test for a symmetric rational matrix."""
    n = len(m)
    # fraction-free elimination: pivots positive <=> all leading minors positive
    a = [[Fraction(x) for x in r] for r in m]
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            if f:
                for j in range(k, n):
                    a[i][j] -= f * a[k][j]
    return True


def is_integral(rows: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for r in rows for x in r)
