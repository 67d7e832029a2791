"""Finite-dimensional semisimple Q-algebras given by structure constants.

An :class:`AlgebraDescriptor` carries the multiplication table, the reduced
trace as a linear functional, the central idempotents of its simple blocks
and a rational positive involution.  Elements are tuples of Fractions in the
algebra basis.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .exact_linalg import (
    det,
    identity,
    leading_minors_positive,
    rank,
    rat,
    rref,
    solve_left,
)


class AlgebraError(ValueError):
    """Invalid algebra data (non-associative, non-semisimple, bad involution)."""


class NotAUnit(ArithmeticError):
    """The element is zero or a zero divisor."""


def _table_mul(table, n, x, y):
    acc = [Fraction(0)] * n
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = table[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            c = xi * yj
            for k, s in row[j]:
                acc[k] += c * s
    return tuple(acc)


def _vec(n, entries=()):
    v = [Fraction(0)] * n
    for k, c in entries:
        v[k] += c
    return tuple(v)


@dataclass(frozen=True, eq=False)
class AlgebraDescriptor:
    name: str
    dim: int
    table: tuple  # table[i][j] = ((k, c), ...) with e_i e_j = sum c e_k
    unit: tuple
    trace_functional: tuple
    central_idempotents: tuple
    involution: tuple  # row i = coordinates of e_i^*
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._validate()

    # ------------------------------------------------------------- arithmetic

    def zero(self):
        return (Fraction(0),) * self.dim

    def basis_element(self, i):
        return _vec(self.dim, [(i, Fraction(1))])

    def element(self, coords):
        if len(coords) != self.dim:
            raise AlgebraError(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(rat(c) for c in coords)

    def mul(self, x, y):
        return _table_mul(self.table, self.dim, x, y)

    def add(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(a - b for a, b in zip(x, y))

    def scale(self, c, x):
        c = Fraction(c)
        return tuple(c * a for a in x)

    def right_mult_matrix(self, x):
        """Matrix of ``y -> y x``: ``coords(y x) = coords(y) @ rho_x``."""
        return [list(self.mul(self.basis_element(i), x)) for i in range(self.dim)]

    def left_mult_matrix(self, x):
        """Matrix of ``y -> x y``: ``coords(x y) = coords(y) @ lambda_x``."""
        return [list(self.mul(x, self.basis_element(i))) for i in range(self.dim)]

    def regular_norm(self, x) -> Fraction:
        return det(self.right_mult_matrix(x))

    def regular_trace(self, x) -> Fraction:
        m = self.right_mult_matrix(x)
        return sum((m[i][i] for i in range(self.dim)), Fraction(0))

    def reduced_trace(self, x) -> Fraction:
        return sum((a * t for a, t in zip(x, self.trace_functional)), Fraction(0))

    def try_invert(self, x):
        """Two-sided inverse of ``x``; raises :class:`NotAUnit` otherwise."""
        lam = self.left_mult_matrix(x)
        if det(lam) == 0:
            raise NotAUnit("element is a zero divisor")
        y = solve_left(lam, self.unit)
        return tuple(y)

    def is_unit(self, x) -> bool:
        return self.regular_norm(x) != 0

    def apply_involution(self, x):
        n = self.dim
        acc = [Fraction(0)] * n
        for i, xi in enumerate(x):
            if xi:
                for k, c in enumerate(self.involution[i]):
                    if c:
                        acc[k] += xi * c
        return tuple(acc)

    def power(self, x, e):
        out = self.unit
        base = x
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    # ------------------------------------------------------------ trace forms

    def reduced_trace_form_gram(self):
        """``[trd(e_i e_j)]``, the untwisted trace form."""
        if "trd_gram" not in self._cache:
            n = self.dim
            self._cache["trd_gram"] = [
                [self.reduced_trace(self.mul(self.basis_element(i), self.basis_element(j)))
                 for j in range(n)] for i in range(n)]
        return self._cache["trd_gram"]

    def twisted_trace_form_gram(self):
        """``[trd(e_i e_j^*)]``; positive definite for a positive involution."""
        if "tau_gram" not in self._cache:
            n = self.dim
            stars = [self.apply_involution(self.basis_element(j)) for j in range(n)]
            self._cache["tau_gram"] = [
                [self.reduced_trace(self.mul(self.basis_element(i), stars[j]))
                 for j in range(n)] for i in range(n)]
        return self._cache["tau_gram"]

    def tau(self, x, y):
        return self.reduced_trace(self.mul(x, self.apply_involution(y)))

    # ------------------------------------------------------------- submodules

    def left_span_basis(self, generators, n):
        """Q-basis (flat rows of length ``n*dim``) of the left A-span."""
        rows = []
        for g in generators:
            for k in range(self.dim):
                e = self.basis_element(k)
                rows.append([c for comp in g for c in self.mul(e, comp)])
        if not rows:
            return []
        red, _ = rref(rows, n * self.dim)
        return red

    def submodule_rank_and_freeness(self, generators, n=None):
        """Rank and freeness of the left A-span of vectors in ``A^n``."""
        if n is None:
            n = len(generators[0]) if generators else 0
        basis = self.left_span_basis(generators, n)
        comps = []
        rk = None
        free = True
        for e in self.central_idempotents:
            e_dim = rank([list(self.mul(e, self.basis_element(k))) for k in range(self.dim)])
            ev = [[c for i in range(n) for c in self.mul(e, tuple(v[i * self.dim:(i + 1) * self.dim]))]
                  for v in basis]
            v_dim = rank(ev) if ev else 0
            comps.append((v_dim, e_dim))
            if v_dim % e_dim:
                free = False
                continue
            m = v_dim // e_dim
            if rk is None:
                rk = m
            elif rk != m:
                free = False
        return SubmoduleInfo(rk if free else None, free, basis, tuple(comps))

    # ------------------------------------------------------------- validation

    def with_involution(self, matrix, name=None) -> "AlgebraDescriptor":
        inv = tuple(tuple(rat(c) for c in row) for row in matrix)
        return AlgebraDescriptor(name or self.name + "'", self.dim, self.table, self.unit,
                                 self.trace_functional, self.central_idempotents, inv)

    def _validate(self):
        n = self.dim
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise AlgebraError("structure table has wrong shape")
        basis = [self.basis_element(i) for i in range(n)]
        prods = [[self.mul(basis[i], basis[j]) for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mul(prods[i][j], basis[k]) != self.mul(basis[i], prods[j][k]):
                        raise AlgebraError(f"not associative at ({i},{j},{k})")
        for b in basis:
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise AlgebraError("unit is not a two-sided identity")
        total = self.zero()
        for a, e in enumerate(self.central_idempotents):
            if self.mul(e, e) != e:
                raise AlgebraError("central idempotent is not idempotent")
            for b in basis:
                if self.mul(e, b) != self.mul(b, e):
                    raise AlgebraError("idempotent is not central")
            for c, f in enumerate(self.central_idempotents):
                if c != a and any(self.mul(e, f)):
                    raise AlgebraError("central idempotents not orthogonal")
            total = self.add(total, e)
        if total != self.unit:
            raise AlgebraError("central idempotents do not sum to 1")
        if len(self.involution) != n:
            raise AlgebraError("involution matrix has wrong shape")
        stars = [self.apply_involution(b) for b in basis]
        for i in range(n):
            if self.apply_involution(stars[i]) != basis[i]:
                raise AlgebraError("involution does not have order 2")
            for j in range(n):
                lhs = self.apply_involution(prods[i][j])
                if lhs != self.mul(stars[j], stars[i]):
                    raise AlgebraError("involution is not an anti-automorphism")
        reg = [[self.regular_trace(prods[i][j]) for j in range(n)] for i in range(n)]
        if det(reg) == 0:
            raise AlgebraError("trace form is degenerate: algebra is not semisimple")
        if not leading_minors_positive(self.twisted_trace_form_gram()):
            raise AlgebraError("involution is not positive (twisted trace form not definite)")


@dataclass(frozen=True)
class SubmoduleInfo:
    rank: Optional[int]
    free: bool
    basis: list
    component_dims: tuple  # (dim_Q e_i V, dim_Q e_i A) per central idempotent


def _table_from_products(n, product):
    """Build the sparse table from ``product(i, j) -> dense coordinate list``."""
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = product(i, j)
            row.append(tuple((k, Fraction(c)) for k, c in enumerate(v) if c))
        table.append(tuple(row))
    return tuple(table)


# ------------------------------------------------------------------ builders

def rational() -> AlgebraDescriptor:
    one = (Fraction(1),)
    return AlgebraDescriptor("Q", 1, (((( 0, Fraction(1)),),),), one, one, (one,), ((Fraction(1),),))


def number_field(min_poly, involution=None, name=None) -> AlgebraDescriptor:
    """``Q[x]/(f)`` with ``f`` given by ascending coefficients.

    ``f`` must be squarefree (the result is etale, a product of fields).  The
    involution is the identity unless ``involution`` gives the coordinates of
    the image of ``x`` under an automorphism of order two.
    """
    coeffs = [rat(c) for c in min_poly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    n = len(coeffs) - 1
    if n < 1:
        raise AlgebraError("minimal polynomial must have positive degree")
    lead = coeffs[-1]
    coeffs = [c / lead for c in coeffs]

    def reduce_poly(p):
        p = list(p)
        for top in range(len(p) - 1, n - 1, -1):
            c = p[top]
            if c:
                for i in range(n + 1):
                    p[top - n + i] -= c * coeffs[i]
        return (p + [Fraction(0)] * n)[:n]

    def product(i, j):
        p = [Fraction(0)] * (i + j + 1)
        p[i + j] = Fraction(1)
        return reduce_poly(p)

    table = _table_from_products(n, product)
    unit = _vec(n, [(0, Fraction(1))])

    def mul(x, y):
        return _table_mul(table, n, x, y)

    # field (etale) trace = regular trace on the power basis
    trace = tuple(
        sum((mul(_vec(n, [(i, Fraction(1))]), _vec(n, [(k, Fraction(1))]))[i] for i in range(n)),
            Fraction(0))
        for k in range(n))
    if involution is None:
        inv = tuple(tuple(identity(n, Fraction(1))[i]) for i in range(n))
    else:
        sigma = tuple(rat(c) for c in involution)
        if len(sigma) != n:
            raise AlgebraError("involution image has wrong length")
        image = [unit]
        for _ in range(1, n):
            image.append(mul(image[-1], sigma))
        # f(sigma(x)) must vanish for sigma to be an automorphism
        val = [Fraction(0)] * n
        power = unit
        for c in coeffs:
            val = [a + c * b for a, b in zip(val, power)]
            power = mul(power, sigma)
        if any(val):
            raise AlgebraError("involution does not map x to a root of the minimal polynomial")
        inv = tuple(image)
    label = name or "Q[x]/(" + ",".join(str(c) for c in coeffs) + ")"
    return AlgebraDescriptor(label, n, table, unit, trace, (unit,), inv)


def quaternion(a, b) -> AlgebraDescriptor:
    """``(a, b)_Q`` with basis 1, i, j, k and standard conjugation.

    Only definite algebras (``a, b < 0``) are accepted, since conjugation is
    positive exactly in that case.
    """
    a, b = rat(a), rat(b)
    if a == 0 or b == 0:
        raise AlgebraError("quaternion parameters must be nonzero")
    if not (a < 0 and b < 0):
        raise AlgebraError("indefinite quaternion algebra: conjugation is not a positive involution "
                           "(need a < 0 and b < 0)")
    one = Fraction(1)
    # e_x e_y as (coefficient, index)
    rules = {
        (0, 0): (one, 0), (0, 1): (one, 1), (0, 2): (one, 2), (0, 3): (one, 3),
        (1, 0): (one, 1), (1, 1): (a, 0), (1, 2): (one, 3), (1, 3): (a, 2),
        (2, 0): (one, 2), (2, 1): (-one, 3), (2, 2): (b, 0), (2, 3): (-b, 1),
        (3, 0): (one, 3), (3, 1): (-a, 2), (3, 2): (b, 1), (3, 3): (-a * b, 0),
    }
    table = tuple(tuple(((rules[i, j][1], rules[i, j][0]),) for j in range(4)) for i in range(4))
    unit = _vec(4, [(0, one)])
    trace = (Fraction(2), Fraction(0), Fraction(0), Fraction(0))
    inv = (unit, _vec(4, [(1, -one)]), _vec(4, [(2, -one)]), _vec(4, [(3, -one)]))
    return AlgebraDescriptor(f"({a},{b})_Q", 4, table, unit, trace, (unit,), inv)


def matrix_algebra(m: int, base: AlgebraDescriptor = None) -> AlgebraDescriptor:
    """``M_m(base)`` with basis ``E_rs (x) b_k`` at index ``(r*m + s)*d + k``.

    Reduced trace is the base reduced trace of the diagonal sum; the
    involution is the base involution entrywise followed by transposition.
    """
    if base is None:
        base = rational()
    d = base.dim
    n = m * m * d

    def idx(r, s, k):
        return (r * m + s) * d + k

    def product(i, j):
        r, rest = divmod(i, m * d)
        s, k = divmod(rest, d)
        t, rest = divmod(j, m * d)
        u, l = divmod(rest, d)
        v = [Fraction(0)] * n
        if s == t:
            for kk, c in base.table[k][l]:
                v[idx(r, u, kk)] += c
        return v

    table = _table_from_products(n, product)
    unit = [Fraction(0)] * n
    for r in range(m):
        for k in range(d):
            unit[idx(r, r, k)] = base.unit[k]
    trace = [Fraction(0)] * n
    for r in range(m):
        for k in range(d):
            trace[idx(r, r, k)] = base.trace_functional[k]
    inv = []
    for i in range(n):
        r, rest = divmod(i, m * d)
        s, k = divmod(rest, d)
        v = [Fraction(0)] * n
        for kk, c in enumerate(base.involution[k]):
            if c:
                v[idx(s, r, kk)] += c
        inv.append(tuple(v))
    idem = []
    for e in base.central_idempotents:
        v = [Fraction(0)] * n
        for r in range(m):
            for k in range(d):
                v[idx(r, r, k)] = e[k]
        idem.append(tuple(v))
    return AlgebraDescriptor(f"M{m}({base.name})", n, table, tuple(unit), tuple(trace),
                             tuple(idem), tuple(inv))


def direct_sum(summands) -> AlgebraDescriptor:
    summands = list(summands)
    if not summands:
        raise AlgebraError("empty direct sum")
    n = sum(s.dim for s in summands)
    offsets = []
    off = 0
    for s in summands:
        offsets.append(off)
        off += s.dim

    def locate(i):
        for a, s in enumerate(summands):
            if offsets[a] <= i < offsets[a] + s.dim:
                return a, i - offsets[a]
        raise IndexError(i)

    def product(i, j):
        a, ii = locate(i)
        b, jj = locate(j)
        v = [Fraction(0)] * n
        if a == b:
            for k, c in summands[a].table[ii][jj]:
                v[offsets[a] + k] += c
        return v

    def embed(a, x):
        v = [Fraction(0)] * n
        for k, c in enumerate(x):
            v[offsets[a] + k] = c
        return tuple(v)

    table = _table_from_products(n, product)
    unit = tuple(c for s in summands for c in s.unit)
    trace = tuple(c for s in summands for c in s.trace_functional)
    idem = tuple(embed(a, e) for a, s in enumerate(summands) for e in s.central_idempotents)
    inv = []
    for a, s in enumerate(summands):
        for row in s.involution:
            inv.append(embed(a, row))
    name = " + ".join(s.name for s in summands)
    return AlgebraDescriptor(name, n, table, unit, trace, idem, tuple(inv))


def build_algebra(spec) -> AlgebraDescriptor:
    """Construct an algebra from its JSON description.

    Accepted ``type`` values: ``rational``, ``number_field`` (``min_poly``,
    optional ``involution``), ``quaternion`` (``a``, ``b``), ``matrix``
    (``m``, optional ``base``) and ``direct_sum`` (``summands``).
    """
    if not isinstance(spec, dict) or "type" not in spec:
        raise AlgebraError(f"algebra spec must be an object with a 'type': {spec!r}")
    kind = spec["type"]
    if kind == "rational":
        return rational()
    if kind == "number_field":
        return number_field(spec["min_poly"], spec.get("involution"), spec.get("name"))
    if kind == "quaternion":
        return quaternion(spec["a"], spec["b"])
    if kind == "matrix":
        base = build_algebra(spec["base"]) if "base" in spec else rational()
        return matrix_algebra(int(spec["m"]), base)
    if kind == "direct_sum":
        return direct_sum(build_algebra(s) for s in spec["summands"])
    raise AlgebraError(f"unknown algebra type {kind!r}")


def involution_determinant(A: AlgebraDescriptor) -> Fraction:
    return det([list(r) for r in A.involution])


def transpose_conjugated(A: AlgebraDescriptor, p_diag) -> list:
    """Involution matrix of ``x -> P x^* P^{-1}`` for a diagonal ``P`` on M_m(Q).

    Only meaningful for ``matrix_algebra(m, rational())``.
    """
    m = len(p_diag)
    if A.dim != m * m:
        raise AlgebraError("expects M_m(Q)")
    p = [rat(c) for c in p_diag]
    rows = []
    for r in range(m):
        for s in range(m):
            # (E_rs)^T = E_sr ; P E_sr P^{-1} = p_s / p_r E_sr
            v = [Fraction(0)] * (m * m)
            v[s * m + r] = p[s] / p[r]
            rows.append(v)
    return rows

