"""Z-orders, full left ideals and prime ideals above a rational prime.

An order is stored with the basis it was built from; all integer data (the
structure constants, prime kernels, radical lattices) is expressed in that
basis, which we call *order coordinates*.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional

from sympy import factorint, isprime

from .algebra import AlgebraDescriptor, AlgebraError
from .exact_linalg import (
    ZLattice,
    det,
    hnf_basis,
    identity,
    inverse,
    matmul,
    vecmat,
)
from .kernels import nullspace_mod_p
from .residue import FpAlgebra, quotient, radical, simple_components


class NotARing(AlgebraError):
    pass


class NotFull(AlgebraError):
    pass


@dataclass(frozen=True, eq=False)
class OrderLattice:
    algebra: AlgebraDescriptor
    basis: tuple  # rows: algebra coordinates of the order basis
    known_maximal: bool = False
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def lattice(self) -> ZLattice:
        if "lattice" not in self._cache:
            self._cache["lattice"] = ZLattice.from_rows([list(r) for r in self.basis], self.dim)
        return self._cache["lattice"]

    @property
    def inverse_basis(self):
        if "binv" not in self._cache:
            self._cache["binv"] = inverse([list(r) for r in self.basis])
        return self._cache["binv"]

    def coords(self, x):
        """Order coordinates (Fractions) of an algebra element."""
        return vecmat(list(x), self.inverse_basis)

    def element(self, coords):
        return tuple(vecmat(list(coords), [list(r) for r in self.basis]))

    def contains(self, x) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coords(x))

    def denominator_of(self, x) -> int:
        """Smallest ``r > 0`` with ``r x`` in the order."""
        return lcm(1, *(Fraction(c).denominator for c in self.coords(x)))

    @property
    def structure_constants(self):
        """``struct[i][j]``: integer coordinates of ``b_i b_j``."""
        return self._cache["struct"]

    @property
    def unit_coords(self):
        return [int(c) for c in self.coords(self.algebra.unit)]

    def left_action(self, i):
        """Integer matrix of ``y -> b_i y`` in order coordinates."""
        s = self.structure_constants
        return [list(s[i][j]) for j in range(self.dim)]

    def left_action_of(self, coords):
        n = self.dim
        s = self.structure_constants
        out = [[0] * n for _ in range(n)]
        for i, c in enumerate(coords):
            if c:
                for j in range(n):
                    row = s[i][j]
                    oj = out[j]
                    for k in range(n):
                        oj[k] += c * row[k]
        return out

    def right_action_of(self, coords):
        n = self.dim
        s = self.structure_constants
        out = [[0] * n for _ in range(n)]
        for j, c in enumerate(coords):
            if c:
                for i in range(n):
                    row = s[i][j]
                    oi = out[i]
                    for k in range(n):
                        oi[k] += c * row[k]
        return out

    def mul_coords(self, x, y):
        n = self.dim
        s = self.structure_constants
        acc = [0] * n
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        c = a * b
                        row = s[i][j]
                        for k in range(n):
                            acc[k] += c * row[k]
        return acc

    def local_structure(self, p) -> "LocalStructure":
        key = ("local", p)
        if key not in self._cache:
            self._cache[key] = _local_structure(self, p)
        return self._cache[key]

    def __repr__(self):
        return f"OrderLattice({self.name or self.algebra.name}, dim={self.dim})"


def build_order(A: AlgebraDescriptor, basis, known_maximal=False, name="") -> OrderLattice:
    """Validate that the Z-span of ``basis`` is an order in ``A``."""
    rows = [tuple(Fraction(c) for c in r) for r in basis]
    n = A.dim
    if len(rows) != n or any(len(r) != n for r in rows) or det([list(r) for r in rows]) == 0:
        raise NotFull("order basis must consist of dim A linearly independent vectors")
    order = OrderLattice(A, tuple(rows), bool(known_maximal), name)
    one = order.coords(A.unit)
    if any(c.denominator != 1 for c in one):
        raise NotARing("1 is not in the lattice")
    struct = []
    for i in range(n):
        row = []
        for j in range(n):
            c = order.coords(A.mul(rows[i], rows[j]))
            if any(x.denominator != 1 for x in c):
                raise NotARing(f"b_{i} * b_{j} leaves the lattice")
            row.append(tuple(int(x) for x in c))
        struct.append(tuple(row))
    order._cache["struct"] = tuple(struct)
    return order


# ------------------------------------------------------------------- ideals

@dataclass(frozen=True, eq=False)
class FullLeftIdeal:
    order: OrderLattice
    lattice: ZLattice  # algebra coordinates

    def order_coordinate_rows(self):
        return matmul(self.lattice.rational_basis(), self.order.inverse_basis)

    def denominator(self) -> int:
        """Smallest positive integer ``r`` with ``a r`` inside the order."""
        return lcm(1, *(x.denominator for r in self.order_coordinate_rows() for x in r))

    def integral_rows(self, r=None):
        """Order coordinates of a basis of ``a r`` (integers)."""
        if r is None:
            r = self.denominator()
        rows = [[x * r for x in row] for row in self.order_coordinate_rows()]
        if any(x.denominator != 1 for row in rows for x in row):
            raise ValueError(f"{r} does not clear the ideal denominators")
        return [[int(x) for x in row] for row in rows]

    def right_multiply(self, u) -> "FullLeftIdeal":
        A = self.order.algebra
        rows = matmul(self.lattice.rational_basis(), A.right_mult_matrix(u))
        return FullLeftIdeal(self.order, ZLattice.from_rows(rows, A.dim))

    def scaled(self, r) -> "FullLeftIdeal":
        return FullLeftIdeal(self.order, self.lattice.scaled(r))

    def __eq__(self, other):
        return isinstance(other, FullLeftIdeal) and self.lattice == other.lattice

    def __hash__(self):
        return hash(self.lattice)


def build_left_ideal(order: OrderLattice, generators) -> FullLeftIdeal:
    """The left ideal ``sum O g`` generated by algebra elements ``g``."""
    A = order.algebra
    rows = []
    for g in generators:
        g = tuple(Fraction(c) for c in g)
        for b in order.basis:
            rows.append(list(A.mul(b, g)))
    if not rows:
        raise NotFull("no generators")
    lat = ZLattice.from_rows(rows, A.dim)
    if not lat.is_full:
        raise NotFull("generators span a proper subspace of A")
    return FullLeftIdeal(order, lat)


def is_left_stable(order: OrderLattice, lat: ZLattice) -> bool:
    A = order.algebra
    basis = lat.rational_basis()
    for b in order.basis:
        for v in basis:
            if not lat.contains(A.mul(b, v)):
                return False
    return True


# -------------------------------------------------------------- prime ideals

@dataclass(frozen=True)
class PrimeIdealData:
    p: int
    index: int
    kernel_basis: tuple  # lifts of an F_p-basis of P/pO, order coordinates
    kernel_hnf: tuple  # HNF basis of P itself (contains pO)
    capacity: int
    residue_dim: int
    center_dim: int
    simple_module_dim: int
    idempotent: tuple  # a lift to O of the central idempotent of O/P
    radical_dim: int

    @property
    def key(self):
        return (self.p, self.index)

    @property
    def norm(self) -> int:
        return self.p ** self.residue_dim

    @property
    def norm_root(self) -> int:
        """``N(P)^(1/kappa)``, which is the size of one simple module."""
        return self.p ** self.simple_module_dim


@dataclass(frozen=True)
class LocalStructure:
    """Everything known about ``O/pO``."""

    p: int
    radical_basis: tuple  # order coordinates mod p
    radical_hnf: tuple  # HNF basis of the preimage J of the radical
    primes: tuple


def residue_algebra(order: OrderLattice, p) -> FpAlgebra:
    s = order.structure_constants
    return FpAlgebra(p, [[list(v) for v in row] for row in s], order.unit_coords)


def _local_structure(order: OrderLattice, p) -> LocalStructure:
    B = residue_algebra(order, p)
    n = B.dim
    rad = radical(B)
    S, q = quotient(B, rad)
    comps = simple_components(S)
    pI = [[p if i == j else 0 for j in range(n)] for i in range(n)]
    rad_hnf = tuple(tuple(r) for r in hnf_basis([list(r) for r in rad] + pI))
    entries = []
    for comp in comps:
        # x in P  <=>  pi(x) e == 0 in S
        images = [S.mul(q.project(B.basis_element(t)), comp.idempotent) for t in range(n)]
        ker = nullspace_mod_p(images, S.dim, p) if S.dim else [B.basis_element(t) for t in range(n)]
        ker_hnf = tuple(tuple(r) for r in hnf_basis([list(v) for v in ker] + pI))
        entries.append((comp, ker, ker_hnf, tuple(q.lift(comp.idempotent))))
    entries.sort(key=lambda e: (e[0].residue_dim, e[2]))
    primes = tuple(
        PrimeIdealData(
            p=p,
            index=i,
            kernel_basis=tuple(tuple(v) for v in ker),
            kernel_hnf=ker_hnf,
            capacity=comp.capacity,
            residue_dim=comp.residue_dim,
            center_dim=comp.center_dim,
            simple_module_dim=comp.capacity * comp.center_dim,
            idempotent=idem,
            radical_dim=len(rad),
        )
        for i, (comp, ker, ker_hnf, idem) in enumerate(entries)
    )
    return LocalStructure(p, tuple(tuple(r) for r in rad), rad_hnf, primes)


def projector(order: OrderLattice, prime: PrimeIdealData):
    """Matrix mod p of ``x -> e x`` on O/pO, with ``e`` the lifted idempotent.

    On the semisimple quotient this is the projection onto the component of
    ``prime``.
    """
    return [[c % prime.p for c in row] for row in order.left_action_of(list(prime.idempotent))]


def primes_above(order: OrderLattice, p: int):
    """Prime ideals of ``order`` containing ``p``, in canonical order."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return list(order.local_structure(p).primes)


def prime_by_key(order: OrderLattice, key) -> PrimeIdealData:
    p, i = key
    return order.local_structure(p).primes[i]


def discriminant(order: OrderLattice) -> int:
    """``det[Tr(rho_{b_i b_j})]`` over the order basis (regular trace)."""
    A = order.algebra
    g = [[A.regular_trace(A.mul(bi, bj)) for bj in order.basis] for bi in order.basis]
    d = det(g)
    return int(d)


def discriminant_support(order: OrderLattice):
    d = discriminant(order)
    return sorted(factorint(abs(d)).keys())


@dataclass(frozen=True)
class FixedPoint:
    p: int


@dataclass(frozen=True)
class Enlarged:
    p: int
    order: OrderLattice
    index: int


def non_maximality_witness(order: OrderLattice, p: int):
    """Idealizer of the p-radical: a strictly larger order or ``FixedPoint``.

    With ``J`` the preimage of the radical of ``O/pO`` we compute
    ``{x in A : xJ <= J, Jx <= J}``; it lies in ``p^-1 O`` because
    ``pO <= J``, so it is found as a kernel over GF(p).
    """
    ls = order.local_structure(p)
    n = order.dim
    jb = [list(r) for r in ls.radical_hnf]
    jinv = inverse(jb)
    blocks = []
    for t in range(n):
        jt = jb[t]
        for side in ("left", "right"):
            rows = []
            for i in range(n):
                ei = [int(i == k) for k in range(n)]
                prod = order.mul_coords(ei, jt) if side == "left" else order.mul_coords(jt, ei)
                c = vecmat(prod, jinv)
                rows.append([int(x) % p for x in c])
            blocks.append(rows)
    mat = [[v for blk in blocks for v in blk[i]] for i in range(n)]
    ker = nullspace_mod_p(mat, len(mat[0]), p)
    if not ker:
        return FixedPoint(p)
    rows = [[Fraction(x) for x in r] for r in identity(n)] + [[Fraction(x, p) for x in v] for v in ker]
    new_lat = ZLattice.from_rows(rows, n)
    if new_lat.denom == 1:
        return FixedPoint(p)
    new_basis = matmul(new_lat.rational_basis(), [list(r) for r in order.basis])
    bigger = build_order(order.algebra, new_basis, False, (order.name or "O") + f"+idealizer({p})")
    index = int(1 / det(new_lat.rational_basis()))
    return Enlarged(p, bigger, abs(index))


def ord_p_of_ideal(order: OrderLattice, ideal: FullLeftIdeal, prime: PrimeIdealData, r: Optional[int] = None) -> int:
    """``ord_P(a) = ord_P(O/ar) - ord_P(O/Or)``."""
    from .finite_modules import ord_of_ideal

    return ord_of_ideal(order, ideal, r).get(prime.key, 0)
