import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nca import corpus
from nca.arakelov import (
    ArithDivisor,
    CompleteIdeal,
    Divisor,
    LogCertificate,
    absolute_norm_complete,
    absolute_norm_ideal,
    chi_exact,
    complete_ideal,
    deg,
    deg_exact,
    diagram_check,
    div_of_ideal,
    div_of_unit,
    divisor_covariance,
    divisor_product,
    norm_covariance_check,
    product_formula_check,
    riemann_roch_check,
    trivial_complete_ideal,
    vol_squared,
    vol_squared_complete,
)
from nca.algebra import NotAUnit
from nca.orders_ideals import build_left_ideal
from nca.suites import random_complete_ideal, random_unit


def test_certificate_normalizes_root():
    assert LogCertificate.make(81, 2) == LogCertificate(Fraction(9), 1)
    assert LogCertificate.make(Fraction(1, 8), 6) == LogCertificate(Fraction(1, 2), 2)
    assert LogCertificate.make(2, 2) == LogCertificate(Fraction(2), 2)
    assert math.isclose(LogCertificate.make(81, 2).log(), math.log(9))
    with pytest.raises(ValueError):
        LogCertificate.make(0)


def test_trivial_divisors(M2):
    assert div_of_unit(M2, M2.algebra.unit) == ArithDivisor(Divisor(), M2.algebra.unit)
    assert div_of_ideal(trivial_complete_ideal(M2)) == ArithDivisor(Divisor(), M2.algebra.unit)


def test_divisors_of_diag_3_1(M2):
    u = M2.algebra.element([3, 0, 0, 1])
    assert div_of_unit(M2, u).finite.as_dict() == {(3, 0): 1}
    ci = complete_ideal(M2, [u])
    assert div_of_ideal(ci).finite.as_dict() == {(3, 0): -1}
    assert absolute_norm_ideal(ci.ideal) == 9


def test_gaussian_ideal_divisor(Zi):
    ci = complete_ideal(Zi, [[2, 1]])
    (v,) = div_of_ideal(ci).finite.as_dict().values()
    assert v == -1
    assert absolute_norm_complete(ci) == 5


def test_norm_examples(Z, Zi, M2):
    assert absolute_norm_ideal(build_left_ideal(M2, [M2.algebra.unit])) == 1
    assert absolute_norm_complete(complete_ideal(Z, [[2]], [3])) == 6
    a = build_left_ideal(M2, [M2.algebra.element([3, 1, 0, 2])])
    two = build_left_ideal(M2, [M2.algebra.element([2, 0, 0, 2])])
    assert absolute_norm_ideal(a.scaled(2)) == absolute_norm_ideal(a) * absolute_norm_ideal(two)


def test_degree_examples(M2):
    A = M2.algebra
    assert deg_exact(M2, ArithDivisor(Divisor(), A.unit)) == LogCertificate(Fraction(1))
    D = ArithDivisor(Divisor.from_dict({(3, 0): 1}), A.unit)
    assert deg_exact(M2, D) == LogCertificate(Fraction(9))
    assert math.isclose(deg(M2, D), math.log(9))
    assert deg_exact(M2, div_of_unit(M2, A.element([3, 0, 0, 1]))) == LogCertificate(Fraction(1))


def test_product_formula_examples(M2, hurwitz):
    res = product_formula_check(M2, M2.algebra.element([3, 0, 0, 1]))
    assert res.passed and res.lhs == res.rhs == 81 and res.details["L"] == 2
    res = product_formula_check(hurwitz, hurwitz.algebra.element([1, 1, 0, 0]))
    assert res.passed and res.lhs == 4 and res.details["L"] == 1
    assert product_formula_check(M2, M2.algebra.unit).passed


def test_volume_examples(Z, hurwitz, Zi):
    assert vol_squared(Z, Z.lattice) == 1
    assert vol_squared(Z, Z.lattice.scaled(2)) == 4
    assert vol_squared(hurwitz, hurwitz.lattice, "twisted") == 4
    assert vol_squared(hurwitz, hurwitz.lattice) == 4
    assert vol_squared_complete(complete_ideal(Z, [[2]], [3])) == 36
    ci = complete_ideal(Zi, [[2, 1]])
    assert vol_squared_complete(ci) == 25 * vol_squared(Zi, Zi.lattice)


def test_chi(Z):
    ci = complete_ideal(Z, [[2]], [3])
    assert chi_exact(ci) == LogCertificate(Fraction(1, 6))
    assert riemann_roch_check(ci).passed


def test_zero_divisor_at_infinity_rejected(M2):
    with pytest.raises(NotAUnit):
        complete_ideal(M2, [M2.algebra.unit], M2.algebra.basis_element(0))


def _order_strategy():
    return st.sampled_from(["Z[i]", "hurwitz", "M2(Z)", "Z[i]+M2(Z)"])


ORDERS = {name: corpus.preset(name) for name in ["Z[i]", "hurwitz", "M2(Z)", "Z[i]+M2(Z)"]}


@given(_order_strategy(), st.integers(0, 2 ** 32))
@settings(max_examples=30, deadline=None)
def test_divisor_of_product_is_sum(name, seed):
    rng = random.Random(seed)
    order = ORDERS[name]
    A = order.algebra
    u, v = random_unit(order, rng, 4), random_unit(order, rng, 4)
    lhs = div_of_unit(order, A.mul(u, v))
    rhs = divisor_product(order, div_of_unit(order, u), div_of_unit(order, v))
    assert lhs == rhs
    assert deg_exact(order, lhs) == LogCertificate(Fraction(1))


@given(_order_strategy(), st.integers(0, 2 ** 32))
@settings(max_examples=30, deadline=None)
def test_class_invariance_under_units(name, seed):
    rng = random.Random(seed)
    order = ORDERS[name]
    ci = random_complete_ideal(order, rng, 4)
    u = random_unit(order, rng, 3)
    assert norm_covariance_check(ci, u).passed
    assert divisor_covariance(ci, u)
    assert diagram_check(ci).passed
    assert riemann_roch_check(ci.times_unit(u)).passed


def test_complete_ideal_keeps_infinite_unit(M2):
    ideal = build_left_ideal(M2, [M2.algebra.unit])
    ci = CompleteIdeal(ideal, M2.algebra.element([1, 1, 0, 1]))
    assert absolute_norm_complete(ci) == 1


def test_degree_of_principal_divisors_vanishes():
    # 100 random units spread over the corpus
    orders = corpus.product_formula_corpus()
    rng = random.Random(11)
    for k in range(100):
        order = orders[k % len(orders)]
        u = random_unit(order, rng, 5)
        assert deg_exact(order, div_of_unit(order, u)) == LogCertificate(Fraction(1)), order.name
