"""Divisors, complete ideals, absolute norms, degrees and Riemann-Roch.

Real-valued quantities (degrees, Euler-Minkowski characteristics) are
floats for display only.  Every verdict is decided on an exact
:class:`LogCertificate`, a positive rational ``value`` and an integer
``root`` standing for ``log(value) / root``.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from sympy import factorint, integer_nthroot

from .algebra import NotAUnit
from .exact_linalg import ZLattice, gram_det, matmul, quotient_group_order, rat_str
from .finite_modules import add, norm_from_ords, ord_of_ideal, ord_of_unit
from .orders_ideals import FullLeftIdeal, OrderLattice, build_left_ideal, prime_by_key


@dataclass(frozen=True)
class LogCertificate:
    """``log(value) / root`` with ``root`` as small as possible."""

    value: Fraction
    root: int = 1

    @classmethod
    def make(cls, value, root=1) -> "LogCertificate":
        value = Fraction(value)
        if value <= 0 or root <= 0:
            raise ValueError("certificate needs a positive value and root")
        num, den = value.numerator, value.denominator
        for q in sorted(factorint(root)):
            while root % q == 0:
                rn, okn = integer_nthroot(num, q)
                rd, okd = integer_nthroot(den, q)
                if not (okn and okd):
                    break
                num, den, root = int(rn), int(rd), root // q
        return cls(Fraction(num, den), root)

    def log(self) -> float:
        v = self.value
        return (math.log(v.numerator) - math.log(v.denominator)) / self.root

    def to_json(self):
        return {"value": rat_str(self.value), "root": self.root}


# ------------------------------------------------------------------ divisors

@dataclass(frozen=True)
class Divisor:
    coefficients: tuple = ()  # sorted ((p, index), v) pairs, v != 0

    @classmethod
    def from_dict(cls, d) -> "Divisor":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)))

    def as_dict(self):
        return dict(self.coefficients)

    def __add__(self, other):
        return Divisor.from_dict(add(self.as_dict(), other.as_dict()))

    def __neg__(self):
        return Divisor(tuple((k, -v) for k, v in self.coefficients))


@dataclass(frozen=True)
class ArithDivisor:
    finite: Divisor
    infinite: tuple  # a rational unit of A


@dataclass(frozen=True, eq=False)
class CompleteIdeal:
    ideal: FullLeftIdeal
    infinite: tuple
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        A = self.ideal.order.algebra
        if not A.is_unit(self.infinite):
            raise NotAUnit("infinite component must be a unit")

    @property
    def order(self) -> OrderLattice:
        return self.ideal.order

    def times_unit(self, u) -> "CompleteIdeal":
        """Right action ``(a, a_inf) u = (a u, u^-1 a_inf)``."""
        A = self.order.algebra
        uinv = A.try_invert(u)
        return CompleteIdeal(self.ideal.right_multiply(u), A.mul(uinv, self.infinite))


def complete_ideal(order: OrderLattice, generators, infinite=None) -> CompleteIdeal:
    A = order.algebra
    inf = A.unit if infinite is None else A.element(infinite)
    return CompleteIdeal(build_left_ideal(order, generators), inf)


def trivial_complete_ideal(order: OrderLattice) -> CompleteIdeal:
    return CompleteIdeal(FullLeftIdeal(order, order.lattice), order.algebra.unit)


def div_of_unit(order: OrderLattice, u) -> ArithDivisor:
    return ArithDivisor(Divisor.from_dict(ord_of_unit(order, u)), order.algebra.element(u))


def div_of_ideal(ci: CompleteIdeal) -> ArithDivisor:
    ords = ord_of_ideal(ci.order, ci.ideal)
    return ArithDivisor(Divisor.from_dict({k: -v for k, v in ords.items()}), ci.infinite)


def divisor_product(order: OrderLattice, d1: ArithDivisor, d2: ArithDivisor) -> ArithDivisor:
    """Componentwise group law: add the finite parts, multiply the infinite ones."""
    return ArithDivisor(d1.finite + d2.finite, order.algebra.mul(d1.infinite, d2.infinite))


# --------------------------------------------------------------------- norms

def absolute_norm_ideal(ideal: FullLeftIdeal, r=None) -> Fraction:
    """``#(O / a r) / #(O / O r)`` for an admissible integer ``r``."""
    order = ideal.order
    if r is None:
        r = ideal.denominator()
    top = quotient_group_order(order.lattice, ideal.lattice.scaled(r))
    bottom = quotient_group_order(order.lattice, order.lattice.scaled(r))
    return Fraction(top, bottom)


def absolute_norm_complete(ci: CompleteIdeal) -> Fraction:
    A = ci.order.algebra
    return abs(A.regular_norm(ci.infinite)) * absolute_norm_ideal(ci.ideal)


def prime_product(order: OrderLattice, ords: dict) -> Fraction:
    """``prod N(P)^(ord_P / kappa_P)``."""
    return norm_from_ords(order, ords)


def _lcm_capacity(order, keys):
    return lcm(1, *(prime_by_key(order, k).capacity for k in keys))


def deg_exact(order: OrderLattice, D: ArithDivisor) -> LogCertificate:
    """Exact degree: ``prod N(P)^(v L / kappa) / |N(D_inf)|^L`` under root ``L``."""
    coeffs = D.finite.as_dict()
    L = _lcm_capacity(order, coeffs)
    value = Fraction(1)
    for key, v in coeffs.items():
        q = prime_by_key(order, key)
        value *= Fraction(q.norm) ** (v * (L // q.capacity))
    value /= abs(order.algebra.regular_norm(D.infinite)) ** L
    return LogCertificate.make(value, L)


def deg(order: OrderLattice, D: ArithDivisor) -> float:
    return deg_exact(order, D).log()


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    lhs: object
    rhs: object
    details: dict = field(default_factory=dict)

    def to_json(self):
        def enc(x):
            if isinstance(x, Fraction):
                return rat_str(x)
            if isinstance(x, LogCertificate):
                return x.to_json()
            return x

        return {"name": self.name, "pass": self.passed, "lhs": enc(self.lhs), "rhs": enc(self.rhs),
                **{k: enc(v) for k, v in self.details.items()}}


def product_formula_check(order: OrderLattice, u) -> CheckResult:
    """``prod N(P)^(ord_P(u) L / kappa_P) == |N(u)|^L`` exactly."""
    A = order.algebra
    u = A.element(u)
    ords = ord_of_unit(order, u)
    L = _lcm_capacity(order, ords)
    lhs = Fraction(1)
    for key, v in ords.items():
        q = prime_by_key(order, key)
        lhs *= Fraction(q.norm) ** (v * (L // q.capacity))
    rhs = abs(A.regular_norm(u)) ** L
    return CheckResult("product_formula", lhs == rhs, lhs, rhs,
                       {"L": L, "ord": {f"{p},{i}": v for (p, i), v in ords.items()}})


# ------------------------------------------------------------------- volumes

def vol_squared(order: OrderLattice, lattice: ZLattice, form="reduced") -> Fraction:
    A = order.algebra
    gram = A.reduced_trace_form_gram() if form == "reduced" else A.twisted_trace_form_gram()
    return abs(gram_det(lattice.rational_basis(), gram))


def complete_lattice(ci: CompleteIdeal) -> ZLattice:
    """``a_inf * a`` (left multiplication by the infinite component)."""
    A = ci.order.algebra
    rows = matmul(ci.ideal.lattice.rational_basis(), A.left_mult_matrix(ci.infinite))
    return ZLattice.from_rows(rows, A.dim)


def vol_squared_complete(ci: CompleteIdeal) -> Fraction:
    return vol_squared(ci.order, complete_lattice(ci))


def chi_exact(ci: CompleteIdeal) -> LogCertificate:
    """``chi = -1/2 log vol^2``."""
    return LogCertificate.make(1 / vol_squared_complete(ci), 2)


def chi(ci: CompleteIdeal) -> float:
    return chi_exact(ci).log()


def riemann_roch_check(ci: CompleteIdeal) -> CheckResult:
    """``vol^2(a) == N(a)^2 vol^2(O)`` exactly."""
    order = ci.order
    lhs = vol_squared_complete(ci)
    n = absolute_norm_complete(ci)
    rhs = n * n * vol_squared(order, order.lattice)
    return CheckResult("riemann_roch", lhs == rhs, lhs, rhs, {"norm": n})


def diagram_check(ci: CompleteIdeal) -> CheckResult:
    """``deg(div(a)) == -log N(a)`` as certificates."""
    order = ci.order
    lhs = deg_exact(order, div_of_ideal(ci))
    rhs = LogCertificate.make(1 / absolute_norm_complete(ci))
    return CheckResult("degree_of_norm", lhs == rhs, lhs, rhs)


def norm_covariance_check(ci: CompleteIdeal, u) -> CheckResult:
    lhs = absolute_norm_complete(ci.times_unit(u))
    rhs = absolute_norm_complete(ci)
    return CheckResult("norm_class_invariance", lhs == rhs, lhs, rhs)


def ord_prime_product_check(order: OrderLattice, ideal: FullLeftIdeal) -> CheckResult:
    """``#(O/b) == prod N(P)^(ord_P(b)/kappa_P)`` for an ideal ``b`` inside ``O``."""
    lhs = Fraction(quotient_group_order(order.lattice, ideal.lattice))
    rhs = prime_product(order, ord_of_ideal(order, ideal, 1))
    return CheckResult("norm_prime_product", lhs == rhs, lhs, rhs)


def divisor_covariance(ci: CompleteIdeal, u) -> bool:
    """``div(a u) == div(u^-1) div(a)``."""
    order = ci.order
    A = order.algebra
    left = div_of_ideal(ci.times_unit(u))
    right = divisor_product(order, div_of_unit(order, A.try_invert(u)), div_of_ideal(ci))
    return left.finite == right.finite and left.infinite == right.infinite

