"""Hermitian bundles over an order, arithmetic degrees and heights of submodules.

Points of ``A^n`` are flat rows of length ``n * dim A`` (component ``i``
occupies ``[i*d, (i+1)*d)``).  Heights are exact squared rationals; the float
``log_h`` is for display.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraDescriptor, AlgebraError, NotAUnit
from .arakelov import CompleteIdeal, LogCertificate
from .exact_linalg import (
    ZLattice,
    block_diagonal,
    dual_lattice,
    gram_det,
    gram_matrix,
    is_integral,
    lattice_intersect_subspace,
    leading_minors_positive,
    generalized_index,
    rank,
    rat_str,
    rational_kernel,
)
from .orders_ideals import OrderLattice, build_order


class NotFree(AlgebraError):
    pass


class ZeroGram(ArithmeticError):
    pass


def _split(v, n, d):
    return [tuple(v[i * d:(i + 1) * d]) for i in range(n)]


def metric_form(A: AlgebraDescriptor, metric):
    """Rational Gram matrix of ``trd(x H y^*)`` on ``Q^(m*d)``."""
    m, d = len(metric), A.dim
    stars = [A.apply_involution(A.basis_element(b)) for b in range(d)]
    out = [[Fraction(0)] * (m * d) for _ in range(m * d)]
    for i in range(m):
        for j in range(m):
            hij = A.element(metric[i][j])
            if not any(hij):
                continue
            for a in range(d):
                left = A.mul(A.basis_element(a), hij)
                for b in range(d):
                    out[i * d + a][j * d + b] = A.reduced_trace(A.mul(left, stars[b]))
    return out


def canonical_metric(A: AlgebraDescriptor, n):
    return [[A.unit if i == j else A.zero() for j in range(n)] for i in range(n)]


def order_power(order: OrderLattice, n) -> ZLattice:
    """``O^n`` inside ``Q^(n*d)``."""
    return ZLattice.from_rows(block_diagonal([[list(r) for r in order.basis]] * n), n * order.dim)


def lattice_power(lat: ZLattice, n) -> ZLattice:
    return ZLattice.from_rows(block_diagonal([lat.rational_basis()] * n), n * lat.ambient_dim)


@dataclass(frozen=True, eq=False)
class HermitianBundle:
    order: OrderLattice
    rank: int  # m with E inside A^m
    lattice: ZLattice
    metric: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        A = self.order.algebra
        m = self.rank
        if self.lattice.ambient_dim != m * A.dim or len(self.metric) != m:
            raise ValueError("bundle lattice or metric has the wrong size")
        for i in range(m):
            for j in range(m):
                if A.apply_involution(self.metric[i][j]) != A.element(self.metric[j][i]):
                    raise AlgebraError("metric is not *-hermitian")
        if not leading_minors_positive(self.form):
            raise AlgebraError("trd o h is not positive definite")
        if not self.lattice.is_full:
            raise ValueError("bundle lattice must be full in A^m")
        gens = [_split(v, m, A.dim) for v in self.lattice.rational_basis()]
        info = A.submodule_rank_and_freeness(gens, m)
        if not info.free or info.rank != m:
            raise NotFree("Q E is not free over A")
        for b in self.order.basis:
            lam = block_diagonal([A.left_mult_matrix(b)] * m)
            for v in self.lattice.rational_basis():
                w = [sum(v[k] * lam[k][c] for k in range(len(v))) for c in range(len(v))]
                if not self.lattice.contains(w):
                    raise ValueError("bundle lattice is not left O-stable")

    @property
    def form(self):
        if "form" not in self._cache:
            self._cache["form"] = metric_form(self.order.algebra, self.metric)
        return self._cache["form"]

    def gram_det(self, basis=None) -> Fraction:
        rows = self.lattice.rational_basis() if basis is None else basis
        return abs(gram_det(rows, self.form))


def bundle(order: OrderLattice, lattice: ZLattice, metric) -> HermitianBundle:
    A = order.algebra
    H = tuple(tuple(A.element(x) for x in row) for row in metric)
    return HermitianBundle(order, len(H), lattice, H)


def trivial_bundle(order: OrderLattice, n=1) -> HermitianBundle:
    return bundle(order, order_power(order, n), canonical_metric(order.algebra, n))


def line_bundle_of_complete_ideal(ci: CompleteIdeal) -> HermitianBundle:
    A = ci.order.algebra
    a = ci.infinite
    if not A.is_unit(a):
        raise NotAUnit("infinite component must be a unit")
    return bundle(ci.order, ci.ideal.lattice, [[A.mul(a, A.apply_involution(a))]])


def orthogonal_sum(e1: HermitianBundle, e2: HermitianBundle) -> HermitianBundle:
    A = e1.order.algebra
    d = A.dim
    rows = [list(r) + [Fraction(0)] * (e2.rank * d) for r in e1.lattice.rational_basis()]
    rows += [[Fraction(0)] * (e1.rank * d) + list(r) for r in e2.lattice.rational_basis()]
    m = e1.rank + e2.rank
    H = [[A.zero()] * m for _ in range(m)]
    for i in range(e1.rank):
        for j in range(e1.rank):
            H[i][j] = e1.metric[i][j]
    for i in range(e2.rank):
        for j in range(e2.rank):
            H[e1.rank + i][e1.rank + j] = e2.metric[i][j]
    return bundle(e1.order, ZLattice.from_rows(rows, m * d), H)


def adeg_pushforward(E: HermitianBundle):
    """``(-1/2 log|det G|, |det G|)`` over a Z-basis of ``E``."""
    g = E.gram_det()
    return LogCertificate.make(1 / g, 2).log(), g


def adeg_order_exact(E: HermitianBundle) -> LogCertificate:
    base = trivial_bundle(E.order).gram_det()
    return LogCertificate.make(base ** E.rank / E.gram_det(), 2)


def adeg_order(E: HermitianBundle) -> float:
    return adeg_order_exact(E).log()


# ------------------------------------------------------------------- heights

@dataclass(frozen=True)
class HeightValue:
    h_squared: Fraction
    log_h: float
    rank: int

    @classmethod
    def of(cls, h2, rank) -> "HeightValue":
        h2 = Fraction(h2)
        return cls(h2, 0.5 * (math.log(h2.numerator) - math.log(h2.denominator)), rank)


@dataclass(frozen=True, eq=False)
class FreeSubmodule:
    algebra: AlgebraDescriptor
    ambient: int
    basis: tuple  # Q-basis, flat rows
    rank: int

    @property
    def dimension(self):
        return len(self.basis)


def free_submodule(A: AlgebraDescriptor, generators, ambient=None) -> FreeSubmodule:
    """Left A-span of ``generators`` (each a list of ``ambient`` elements)."""
    gens = [[A.element(x) for x in g] for g in generators]
    n = ambient if ambient is not None else (len(gens[0]) if gens else 0)
    if any(len(g) != n for g in gens):
        raise ValueError("generator length differs from the ambient rank")
    if not gens:
        return FreeSubmodule(A, n, (), 0)
    info = A.submodule_rank_and_freeness(gens, n)
    if not info.free:
        raise NotFree(f"submodule is not free: (dim eV, dim eA) per block = {list(info.component_dims)}")
    return FreeSubmodule(A, n, tuple(tuple(r) for r in info.basis), info.rank)


def _from_span(A, n, rows, side="left") -> FreeSubmodule:
    d = A.dim
    if len(rows) % d:
        raise NotFree(f"dimension {len(rows)} is not a multiple of dim A = {d}")
    split = [_split(v, n, d) for v in rows]
    if side == "left":
        info = A.submodule_rank_and_freeness(split, n)
        if not info.free:
            raise NotFree(f"complement is not free: {list(info.component_dims)}")
        if len(info.basis) != len(rows):
            raise AlgebraError("complement is not a left submodule")
    elif rows:
        products = [[c for x in g for c in A.mul(x, A.basis_element(k))] for g in split for k in range(d)]
        if rank([list(r) for r in rows] + products) != len(rows):
            raise AlgebraError("complement is not a right submodule")
        # e central, so V e has the same dimension count as e V
        for e in A.central_idempotents:
            e_dim = rank([list(A.mul(e, A.basis_element(k))) for k in range(d)])
            v_dim = rank([[c for x in g for c in A.mul(x, e)] for g in split])
            if v_dim != (len(rows) // d) * e_dim:
                raise NotFree("right complement is not free")
    return FreeSubmodule(A, n, tuple(tuple(r) for r in rows), len(rows) // d)


def orthogonal_complement(V: FreeSubmodule, twisted=True) -> FreeSubmodule:
    """``{x : sum_i x_i g_i^* = 0}`` (twisted) or ``{x : sum_i g_i x_i = 0}`` (untwisted).

    The twisted complement is a left submodule; the untwisted one is a right
    submodule, and both are checked to be free of complementary rank.
    """
    A, n, d = V.algebra, V.ambient, V.algebra.dim
    if not V.basis:
        rows = [[Fraction(int(i == j)) for j in range(n * d)] for i in range(n * d)]
        return FreeSubmodule(A, n, tuple(tuple(r) for r in rows), n)
    cols = []
    for v in V.basis:
        g = _split(v, n, d)
        # block i of the map x -> h(x, g): coords(x_i) @ M_i
        blocks = [A.right_mult_matrix(A.apply_involution(gi)) if twisted else A.left_mult_matrix(gi)
                  for gi in g]
        cols.append([row for blk in blocks for row in blk])
    mat = [[x for c in cols for x in c[r]] for r in range(n * d)]
    ker = rational_kernel(mat)
    W = _from_span(A, n, ker, "left" if twisted else "right")
    if W.rank + V.rank != n:
        raise AlgebraError("complement has the wrong rank")
    if ker and rank([list(r) for r in V.basis] + ker) != len(V.basis) + len(ker):
        # impossible for the positive twisted form; the untwisted one is indefinite
        raise ZeroGram("submodule meets its complement: the form is degenerate on V")
    return W


def dual_order_lattice(order: OrderLattice, form="twisted") -> ZLattice:
    A = order.algebra
    gram = A.twisted_trace_form_gram() if form == "twisted" else A.reduced_trace_form_gram()
    return dual_lattice(order.lattice, gram)


def _height_squared(V: FreeSubmodule, lat: ZLattice, form, untwisted=False):
    n = V.ambient
    big = block_diagonal([form] * n)
    inter = lattice_intersect_subspace(lattice_power(lat, n), [list(r) for r in V.basis])
    num = gram_det(inter.rational_basis(), big)
    den = gram_det(lat.rational_basis(), form)
    if untwisted:
        num, den = abs(num), abs(den)
        if num == 0:
            raise ZeroGram("trace form restricted to V is degenerate")
    return num / den ** V.rank, inter


def height(order: OrderLattice, V: FreeSubmodule) -> HeightValue:
    h2, _ = _height_squared(V, order.lattice, order.algebra.twisted_trace_form_gram())
    return HeightValue.of(h2, V.rank)


def dual_order_height(order: OrderLattice, V: FreeSubmodule) -> HeightValue:
    h2, _ = _height_squared(V, dual_order_lattice(order), order.algebra.twisted_trace_form_gram())
    return HeightValue.of(h2, V.rank)


def untwisted_height(order: OrderLattice, V: FreeSubmodule, lattice=None) -> HeightValue:
    lat = order.lattice if lattice is None else lattice
    h2, _ = _height_squared(V, lat, order.algebra.reduced_trace_form_gram(), untwisted=True)
    return HeightValue.of(h2, V.rank)


def twisted_form_integral(order: OrderLattice) -> bool:
    A = order.algebra
    b = [list(r) for r in order.basis]
    return is_integral(gram_matrix(b, A.twisted_trace_form_gram()))


@dataclass
class Verdict:
    name: str
    status: str  # "pass", "fail" or "skip"
    lhs: object = None
    rhs: object = None
    reason: str = ""
    probe: object = None  # outcome recorded when the hypothesis failed

    def to_json(self):
        enc = (lambda x: rat_str(x) if isinstance(x, Fraction) else x)
        out = {"name": self.name, "status": self.status, "lhs": enc(self.lhs), "rhs": enc(self.rhs)}
        if self.reason:
            out["reason"] = self.reason
        if self.probe is not None:
            out["probe_outcome"] = self.probe
        return out


def _eq_verdict(name, lhs, rhs):
    return Verdict(name, "pass" if lhs == rhs else "fail", lhs, rhs)


def duality_check(order: OrderLattice, V: FreeSubmodule):
    """Exact duality identities for ``V`` against the dual lattice under the twisted form.

    Returns verdicts ``eq_dt1`` (``H_O(V) = H_dual(V_perp)``), ``eq_dt2``
    (``H_O(V) = H_dual(V)``) and ``index_identity``.  When the twisted form
    is not integral on ``O`` the first is still evaluated and its outcome
    kept in ``probe``; non-maximal orders skip the other two.
    """
    A = order.algebra
    tau = A.twisted_trace_form_gram()
    dual = dual_order_lattice(order)
    W = orthogonal_complement(V, twisted=True)
    h_v, inter_o = _height_squared(V, order.lattice, tau)
    h_w, _ = _height_squared(W, dual, tau)
    integral = twisted_form_integral(order)
    out = []
    dt1 = _eq_verdict("eq_dt1", h_v, h_w)
    if not integral:
        dt1 = Verdict("eq_dt1", "skip", h_v, h_w, "twisted trace form not integral on O", dt1.status)
    out.append(dt1)
    if not (integral and order.known_maximal):
        why = "twisted trace form not integral on O" if not integral else "order not known to be maximal"
        out.append(Verdict("eq_dt2", "skip", reason=why))
        out.append(Verdict("index_identity", "skip", reason=why))
        return out
    h_dual, inter_d = _height_squared(V, dual, tau)
    out.append(_eq_verdict("eq_dt2", h_v, h_dual))
    lhs = generalized_index(inter_d, inter_o) if V.rank else Fraction(1)
    rhs = generalized_index(dual, order.lattice) ** V.rank
    out.append(_eq_verdict("index_identity", lhs, rhs))
    return out


def untwisted_duality_check(order: OrderLattice, V: FreeSubmodule):
    """``H'_O(V) = H'_dual'(V_perp')`` with the reduced trace form, maximal orders only."""
    if not order.known_maximal:
        return [Verdict("untwisted_dt1", "skip", reason="order not known to be maximal")]
    trd = order.algebra.reduced_trace_form_gram()
    dual = dual_order_lattice(order, "reduced")
    try:
        W = orthogonal_complement(V, twisted=False)
        lhs, _ = _height_squared(V, order.lattice, trd, untwisted=True)
        rhs, _ = _height_squared(W, dual, trd, untwisted=True)
    except ZeroGram as exc:
        return [Verdict("untwisted_dt1", "skip", reason=f"degenerate input: {exc}")]
    return [_eq_verdict("untwisted_dt1", lhs, rhs)]


def with_involution_order(order: OrderLattice, involution, name=None) -> OrderLattice:
    A2 = order.algebra.with_involution(involution, name)
    return build_order(A2, [list(r) for r in order.basis], order.known_maximal, order.name)


def involution_independence_probe(order: OrderLattice, generators, involution_1, involution_2):
    """Squared heights of the same submodule under two positive involutions.

    Nothing is asserted; the caller gets both exact values and whether they
    coincide.
    """
    o1 = with_involution_order(order, involution_1, "*1")
    o2 = with_involution_order(order, involution_2, "*2")
    h1 = height(o1, free_submodule(o1.algebra, generators))
    h2 = height(o2, free_submodule(o2.algebra, generators))
    return {"h_squared_1": h1.h_squared, "h_squared_2": h2.h_squared, "equal": h1.h_squared == h2.h_squared}

