"""Finite left O-modules ``outer / inner`` and the valuations ord_P.

Composition factors are counted, never built: for each prime ``p`` dividing
the module order we walk the radical filtration ``M, JM, J^2 M, ...`` of the
p-primary part and split every layer with the central idempotents of the
semisimple quotient.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from sympy import factorint

from .algebra import NotAUnit
from .exact_linalg import ZLattice, block_diagonal, coordinate_matrix, elementary_divisors, inverse, matmul
from .kernels import hnf_mod, matmul_mod
from .orders_ideals import FullLeftIdeal, OrderLattice, build_left_ideal, prime_by_key, primes_above


class InfiniteModule(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteModule:
    order: OrderLattice
    ambient_rank: int
    outer: ZLattice  # in Q^(n * dim A), algebra coordinates
    inner: ZLattice
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.inner.rank != self.outer.rank:
            raise InfiniteModule("inner and outer lattices have different ranks")
        if not self.outer.contains_lattice(self.inner):
            raise ValueError("inner lattice is not contained in outer lattice")

    @property
    def relations(self):
        """Integer rows of ``inner`` in the ``outer`` basis."""
        if "rel" not in self._cache:
            rows = coordinate_matrix(self.outer, self.inner)
            self._cache["rel"] = [[int(x) for x in row] for row in rows]
        return self._cache["rel"]

    def order_size(self) -> int:
        return prod(elementary_divisors(self.relations)) if self.relations else 1

    def exponent(self) -> int:
        divs = elementary_divisors(self.relations)
        return divs[-1] if divs else 1

    def action_matrices(self):
        """Integer matrices of ``x -> b_i x`` on ``outer`` coordinates."""
        if "act" in self._cache:
            return self._cache["act"]
        A = self.order.algebra
        basis = self.outer.rational_basis()
        binv = inverse(basis)
        mats = []
        for b in self.order.basis:
            lam = A.left_mult_matrix(b)
            big = block_diagonal([lam] * self.ambient_rank)
            m = matmul(matmul(basis, big), binv)
            if any(x.denominator != 1 for row in m for x in row):
                raise ValueError("outer lattice is not left O-stable")
            mats.append([[int(x) for x in row] for row in m])
        self._cache["act"] = mats
        return mats


def quotient_module(order: OrderLattice, outer: ZLattice, inner: ZLattice, ambient_rank=1) -> FiniteModule:
    if outer.ambient_dim != ambient_rank * order.dim or inner.ambient_dim != outer.ambient_dim:
        raise ValueError("lattice ambient dimension does not match n * dim A")
    return FiniteModule(order, ambient_rank, outer, inner)


def _combine_actions(mats, coords, m):
    n = len(mats[0])
    out = [[0] * n for _ in range(n)]
    for c, mat in zip(coords, mats):
        c %= m
        if c:
            for i in range(n):
                oi, mi = out[i], mat[i]
                for j in range(n):
                    oi[j] += c * mi[j]
    return [[x % m for x in row] for row in out]


def _log_index(rows, p):
    """``log_p`` of ``[Z^N : L]`` for a mod-p^a HNF basis (pivots on the diagonal)."""
    total = 0
    for i, row in enumerate(rows):
        piv = row[i]
        while piv % p == 0:
            piv //= p
            total += 1
        if piv != 1:
            raise ArithmeticError("pivot is not a power of p")
    return total


def _p_part(module: FiniteModule, p: int, power: int):
    order = module.order
    primes = primes_above(order, p)
    local = order.local_structure(p)
    mats = module.action_matrices()
    dim_n = len(mats[0])
    m = p ** power
    mats_m = [[[x % m for x in row] for row in mat] for mat in mats]
    rad_actions = [_combine_actions(mats_m, list(r), m) for r in local.radical_basis]
    idem_actions = [_combine_actions(mats_m, list(q.idempotent), m) for q in primes]
    rel = [list(r) for r in module.relations]
    floor = hnf_mod(rel, dim_n, m)
    level = hnf_mod([[int(i == j) for j in range(dim_n)] for i in range(dim_n)] + rel, dim_n, m)
    counts = [0] * len(primes)
    while True:
        gens = [[p * x for x in row] for row in level] + rel
        for act in rad_actions:
            gens.extend(matmul_mod(level, act, m))
        nxt = hnf_mod(gens, dim_n, m)
        base = _log_index(nxt, p)
        layer = base - _log_index(level, p)
        if layer == 0:
            break
        split = 0
        for k, act in enumerate(idem_actions):
            part = hnf_mod(matmul_mod(level, act, m) + nxt, dim_n, m)
            d = base - _log_index(part, p)
            q, rem = divmod(d, primes[k].simple_module_dim)
            if rem:
                raise ArithmeticError("layer dimension is not a multiple of the simple module dimension")
            counts[k] += q
            split += d
        if split != layer:
            raise ArithmeticError("idempotent images do not exhaust the layer")
        level = nxt
    if level != floor:
        raise ArithmeticError("radical filtration did not reach the relation lattice")
    return {q.key: c for q, c in zip(primes, counts) if c}


def check_inner_stable(module: FiniteModule):
    """Raise unless ``inner`` is left O-stable.

    ``inner`` contains ``e Z^N`` for the exponent ``e`` of the quotient, so
    stability can be tested on Hermite forms modulo ``e``.
    """
    e = module.exponent()
    if e == 1:
        return
    rel = module.relations
    n = len(rel[0])
    base = hnf_mod(rel, n, e)
    for act in module.action_matrices():
        if hnf_mod(rel + matmul_mod(rel, act, e), n, e) != base:
            raise ValueError("inner lattice is not left O-stable")


def ord_all(module: FiniteModule) -> dict:
    """``{(p, index): ord_P(M)}`` for all primes with nonzero count."""
    if "ord" in module._cache:
        return dict(module._cache["ord"])
    check_inner_stable(module)
    out = {}
    for p, e in sorted(factorint(module.exponent()).items()):
        out.update(_p_part(module, p, e))
    module._cache["ord"] = out
    return dict(out)


def length(module: FiniteModule) -> int:
    return sum(ord_all(module).values())


def subtract(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in sorted(out.items()) if v}


def add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in sorted(out.items()) if v}


def ord_of_quotient(order: OrderLattice, sub: ZLattice) -> dict:
    """ord of ``O / sub`` for a full left-stable sublattice of ``O``."""
    return ord_all(quotient_module(order, order.lattice, sub))


def ord_of_ideal(order: OrderLattice, ideal: FullLeftIdeal, r=None) -> dict:
    """``ord(O/ar) - ord(O/Or)`` with ``r`` the smallest admissible integer by default."""
    if r is None:
        r = ideal.denominator()
    if not order.lattice.contains_lattice(ideal.lattice.scaled(r)):
        raise ValueError(f"a*{r} is not contained in the order")
    top = ord_of_quotient(order, ideal.lattice.scaled(r))
    return subtract(top, ord_of_quotient(order, order.lattice.scaled(r)))


def ord_of_unit(order: OrderLattice, u) -> dict:
    A = order.algebra
    u = A.element(u)
    if not A.is_unit(u):
        raise NotAUnit("element is a zero divisor")
    r = order.denominator_of(u)
    x = A.scale(r, u)
    top = ord_of_quotient(order, build_left_ideal(order, [x]).lattice)
    return subtract(top, ord_of_quotient(order, order.lattice.scaled(r)))


def norm_from_ords(order: OrderLattice, ords: dict) -> Fraction:
    """``prod N(P)^(ord_P / kappa_P)`` as an exact rational.

    Each factor ``N(P)^(1/kappa)`` is the integer ``p^simple_module_dim``.
    """
    out = Fraction(1)
    for key, v in ords.items():
        out *= Fraction(prime_by_key(order, key).norm_root) ** v
    return out
