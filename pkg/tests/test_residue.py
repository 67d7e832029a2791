import pytest

from nca import corpus
from nca.orders_ideals import residue_algebra
from nca.residue import FpAlgebra, center, central_idempotents, is_nilpotent_ideal, quotient, radical, simple_components

import oracles


def group_algebra_s3(p):
    struct, unit = oracles.symmetric_group_struct(3)
    return FpAlgebra(p, struct, unit), struct


def test_radical_of_s3_mod_2_matches_brute_force():
    B, struct = group_algebra_s3(2)
    assert len(radical(B)) == oracles.brute_radical_dim(struct, 2) == 1


def test_radical_of_s3_mod_3_frozen():
    # brute_radical_dim(S3 table, 3) == 4 (729^2 products, too slow to rerun here)
    B, _ = group_algebra_s3(3)
    assert len(radical(B)) == 4


@pytest.mark.parametrize("p,expected", [(2, [(1, 1, 1), (4, 1, 2)]), (3, [(1, 1, 1), (1, 1, 1)])])
def test_s3_semisimple_quotients(p, expected):
    B, _ = group_algebra_s3(p)
    S, _ = quotient(B, radical(B))
    comps = sorted((c.residue_dim, c.center_dim, c.capacity) for c in simple_components(S))
    assert comps == expected


ORDER_BUILDERS = {
    "Z[i]": corpus.gaussian_integers,
    "lipschitz": corpus.lipschitz,
    "hurwitz": corpus.hurwitz,
    "M2": lambda: corpus.matrix_order(2),
    "Z[i]+M2": corpus.gaussian_plus_m2,
}


# dim 6 at p = 3 would need 3^12 products per element; left to the frozen table
BRUTE_CASES = [(name, 2) for name in sorted(ORDER_BUILDERS)] + [(n, 3) for n in ("Z[i]", "lipschitz", "hurwitz", "M2")]


@pytest.mark.parametrize("name,p", BRUTE_CASES)
def test_order_residue_radical_matches_brute_force(name, p):
    B = residue_algebra(ORDER_BUILDERS[name](), p)
    assert len(radical(B)) == oracles.brute_radical_dim(B.struct, p)


def test_frozen_residue_radicals():
    # values from oracles.brute_radical_dim
    expected = {("Z[i]", 2): 1, ("lipschitz", 2): 3, ("hurwitz", 2): 2, ("M2", 2): 0, ("Z[i]+M2", 2): 1,
                ("hurwitz", 3): 0, ("lipschitz", 3): 0}
    for (name, p), k in expected.items():
        B = residue_algebra(ORDER_BUILDERS[name](), p)
        assert len(radical(B)) == k


@pytest.mark.parametrize("name", sorted(ORDER_BUILDERS))
@pytest.mark.parametrize("p", [2, 3, 5])
def test_idempotents_split_the_quotient(name, p):
    B = residue_algebra(ORDER_BUILDERS[name](), p)
    rad = radical(B)
    assert rad == [] or is_nilpotent_ideal(B, rad)
    S, _ = quotient(B, rad)
    assert radical(S) == []
    idems = central_idempotents(S)
    total = [0] * S.dim
    for a, e in enumerate(idems):
        assert S.mul(e, e) == e
        for i in range(S.dim):
            b = S.basis_element(i)
            assert S.mul(e, b) == S.mul(b, e)
        for c, f in enumerate(idems):
            if a != c:
                assert not any(S.mul(e, f))
        total = [(x + y) % p for x, y in zip(total, e)]
    assert total == S.unit


def test_gaussian_integers_mod_3_is_a_field():
    # Z[i] / 3 is GF(9): one component with a 2-dimensional center
    S = residue_algebra(corpus.gaussian_integers(), 3)
    comps = simple_components(S)
    assert [(c.residue_dim, c.center_dim, c.capacity) for c in comps] == [(2, 2, 1)]
    assert len(center(S)) == 2
