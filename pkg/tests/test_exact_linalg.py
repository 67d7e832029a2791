from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nca.exact_linalg import (
    LatticeError,
    ZLattice,
    det,
    dual_lattice,
    elementary_divisors,
    generalized_index,
    hnf,
    identity,
    integer_left_kernel,
    inverse,
    lattice_intersect_subspace,
    matmul,
    quotient_group_order,
    rank,
    rat,
    rat_str,
    rational_kernel,
    snf,
)

import oracles

small = st.integers(-6, 6)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def nonsingular(n):
    return int_matrix(n, n).filter(lambda m: det(m) != 0)


def test_rat_parsing():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(2) == Fraction(2)
    assert rat_str(Fraction(-4, 2)) == "-2"
    assert rat_str(Fraction(1, 3)) == "1/3"


@pytest.mark.parametrize("m", [
    [[2, 0], [0, 3]],
    [[4, 6], [2, 2]],
    [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
    [[1, 2, 3], [4, 5, 6]],
    [[0, 0], [0, 0]],
])
def test_elementary_divisors_match_minor_gcds(m):
    divs = [d for d in elementary_divisors(m) if d]
    assert divs == oracles.minor_gcd_divisors(m)


def test_frozen_smith_divisors():
    # from oracles.minor_gcd_divisors
    assert elementary_divisors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert elementary_divisors([[4, 6], [2, 2]]) == [2, 2]


@given(int_matrix(3, 3))
@settings(max_examples=60, deadline=None)
def test_snf_transform_and_divisibility(m):
    d, u, v = snf(m)
    assert matmul(matmul(u, m), v) == d
    diag = [d[i][i] for i in range(3)]
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    assert abs(det(m)) == diag[0] * diag[1] * diag[2]


@given(int_matrix(4, 3))
@settings(max_examples=60, deadline=None)
def test_hnf_transform_and_shape(m):
    h, u = hnf(m)
    assert matmul(u, m) == h
    assert abs(det(u)) == 1
    last = -1
    for row in h:
        if not any(row):
            continue
        piv = next(j for j, x in enumerate(row) if x)
        assert piv > last and row[piv] > 0
        last = piv


@given(int_matrix(3, 3), st.permutations(range(3)))
@settings(max_examples=60, deadline=None)
def test_hnf_invariant_under_row_permutation(m, perm):
    h1, _ = hnf(m)
    h2, _ = hnf([m[i] for i in perm])
    assert h1 == h2


@given(int_matrix(3, 4))
@settings(max_examples=60, deadline=None)
def test_left_kernels(m):
    for x in rational_kernel(m):
        assert all(v == 0 for v in matmul([x], m)[0])
    ker = integer_left_kernel(m)
    assert len(ker) == 3 - rank(m)
    for x in ker:
        assert all(v == 0 for v in matmul([x], m)[0])
    # saturated: elementary divisors of the kernel basis are all 1
    if ker:
        assert set(elementary_divisors(ker)) <= {1}


@given(nonsingular(3))
@settings(max_examples=40, deadline=None)
def test_inverse(m):
    assert matmul(m, inverse(m)) == identity(3)


@pytest.mark.parametrize("rows,box", [
    ([[2, 1], [0, 3]], 6),
    ([[4, 0], [2, 2]], 4),
    ([[1, 1, 0], [0, 2, 0], [0, 0, 3]], 6),
])
def test_quotient_order_by_coset_enumeration(rows, box):
    big = ZLattice.standard(len(rows))
    sub = ZLattice.from_rows(rows)
    assert quotient_group_order(big, sub) == oracles.coset_count(rows, box)


def test_lattice_canonical_form():
    a = ZLattice.from_rows([[Fraction(1, 2), 0], [0, 1]])
    b = ZLattice.from_rows([[Fraction(1, 2), 1], [Fraction(1, 2), 2]])
    assert a == b
    assert a.denom == 2
    assert a.contains([Fraction(1, 2), 5])
    assert not a.contains([Fraction(1, 4), 0])


def test_intersection_with_subspace_against_enumeration():
    lat = ZLattice.from_rows([[1, 0, 0], [0, 2, 0], [1, 1, 3]])
    span = [[1, 1, 1]]
    found = oracles.lattice_points_in_span([list(r) for r in lat.basis], span, 3)
    inter = lattice_intersect_subspace(lat, span)
    assert inter.rank == 1
    gen = inter.rational_basis()[0]
    nonzero = [v for v in found if any(v)]
    # the generator is the shortest nonzero point, and every point is a multiple of it
    assert min(abs(v[0]) for v in nonzero) == abs(gen[0])
    for v in nonzero:
        assert inter.contains(list(v))


@given(nonsingular(3))
@settings(max_examples=40, deadline=None)
def test_intersection_is_saturated(m):
    lat = ZLattice.from_rows(m)
    span = [m[0], m[1]]
    inter = lattice_intersect_subspace(lat, span)
    assert inter.rank == 2
    again = lattice_intersect_subspace(inter, span)
    assert again == inter
    # contains the generating vectors
    assert inter.contains(m[0]) and inter.contains(m[1])


@given(nonsingular(3), nonsingular(3))
@settings(max_examples=40, deadline=None)
def test_index_multiplicative(a, b):
    l0 = ZLattice.standard(3)
    l1 = ZLattice.from_rows(a)
    l2 = ZLattice.from_rows(matmul(b, a))
    assert generalized_index(l0, l2) == generalized_index(l0, l1) * generalized_index(l1, l2)
    assert generalized_index(l0, l1) == abs(det(a))


@given(nonsingular(3))
@settings(max_examples=40, deadline=None)
def test_dual_is_an_involution(m):
    form = [[2, 1, 0], [1, 2, 0], [0, 0, 1]]
    lat = ZLattice.from_rows(m)
    dual = dual_lattice(lat, form)
    assert dual_lattice(dual, form) == lat
    # pairing between the bases is unimodular
    pair = matmul(matmul(lat.rational_basis(), form), [list(r) for r in zip(*dual.rational_basis())])
    assert all(x.denominator == 1 for r in pair for x in r)
    assert abs(det(pair)) == 1


def test_quotient_requires_containment():
    with pytest.raises(LatticeError):
        quotient_group_order(ZLattice.from_rows([[2, 0], [0, 2]]), ZLattice.standard(2))


@given(nonsingular(3))
@settings(max_examples=40, deadline=None)
def test_dual_reverses_generalized_index(m):
    form = [[1, 0, 0], [0, 2, 1], [0, 1, 3]]
    lat = ZLattice.from_rows(m)
    dual = dual_lattice(lat, form)
    assert generalized_index(lat, dual) * generalized_index(dual, lat) == 1


@given(nonsingular(3), nonsingular(3))
@settings(max_examples=40, deadline=None)
def test_quotient_order_transitive(a, b):
    l1 = ZLattice.standard(3)
    l2 = ZLattice.from_rows(a)
    l3 = ZLattice.from_rows(matmul(b, a))
    assert quotient_group_order(l1, l2) * quotient_group_order(l2, l3) == quotient_group_order(l1, l3)
