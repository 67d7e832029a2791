"""Randomized verification suites shared by the CLI and the acceptance tests.

Every case draws from its own ``random.Random`` seeded by
``(seed, suite, order name, case index)``, so a report does not depend on
the order in which cases run.
"""

import os
import random
from fractions import Fraction
from math import gcd

from .algebra import transpose_conjugated
from .arakelov import (
    CompleteIdeal,
    absolute_norm_ideal,
    deg,
    deg_exact,
    div_of_ideal,
    ord_prime_product_check,
    product_formula_check,
    riemann_roch_check,
)
from .bundles_heights import (
    NotFree,
    adeg_order,
    adeg_order_exact,
    duality_check,
    free_submodule,
    height,
    involution_independence_probe,
    line_bundle_of_complete_ideal,
    orthogonal_complement,
    untwisted_duality_check,
)
from .exact_linalg import rat_str
from .finite_modules import add, ord_of_quotient
from .orders_ideals import NotFull, OrderLattice, build_left_ideal, primes_above

DEFAULT_BOUND = 9
SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


def coefficient_bound(override=None) -> int:
    if override is not None:
        return int(override)
    return int(os.environ.get("NCA_COEFF_BOUND", DEFAULT_BOUND))


def case_rng(seed, suite, name, index):
    return random.Random(f"{seed}:{suite}:{name}:{index}")


def random_order_element(order: OrderLattice, rng, bound):
    coords = [rng.randint(-bound, bound) for _ in range(order.dim)]
    return order.element(coords)


def random_nonzero_divisor(order, rng, bound):
    A = order.algebra
    while True:
        x = random_order_element(order, rng, bound)
        if A.is_unit(x):
            return x


def random_unit(order, rng, bound):
    """``x y^-1`` with ``x, y`` non-zero-divisors of the order (``y`` small)."""
    A = order.algebra
    x = random_nonzero_divisor(order, rng, bound)
    y = random_nonzero_divisor(order, rng, min(bound, 3))
    return A.mul(x, A.try_invert(y))


def random_integral_ideal(order, rng, bound, gens=2):
    """A full left ideal inside ``O`` spanned by small random elements."""
    while True:
        g = [random_order_element(order, rng, bound) for _ in range(gens)]
        try:
            return build_left_ideal(order, g)
        except NotFull:
            continue


def random_fractional_ideal(order, rng, bound):
    ideal = random_integral_ideal(order, rng, bound)
    r = rng.randint(1, 4)
    return ideal.scaled(Fraction(1, r)) if r > 1 else ideal


def random_complete_ideal(order, rng, bound):
    ideal = random_fractional_ideal(order, rng, bound)
    return CompleteIdeal(ideal, random_unit(order, rng, min(bound, 4)))


def random_free_submodule(A, order, n, rank, rng, bound, tries=50):
    for _ in range(tries):
        gens = [[random_order_element(order, rng, bound) for _ in range(n)] for _ in range(rank)]
        try:
            V = free_submodule(A, gens, n)
        except NotFree:
            continue
        if V.rank == rank:
            return V, gens
    raise RuntimeError(f"no free rank-{rank} submodule of A^{n} found")


def _status(ok):
    return "pass" if ok else "fail"


def _enc(x):
    if isinstance(x, Fraction):
        return rat_str(x)
    if isinstance(x, tuple) and all(isinstance(c, Fraction) for c in x):
        return [rat_str(c) for c in x]
    return x


def _ords_json(d):
    return {f"{p},{i}": v for (p, i), v in sorted(d.items())}


def _check(name, lhs, rhs, ok=None, **extra):
    ok = (lhs == rhs) if ok is None else ok
    rec = {"name": name, "status": _status(ok), "lhs": _enc(lhs), "rhs": _enc(rhs)}
    rec.update({k: _enc(v) for k, v in extra.items()})
    return rec


# --------------------------------------------------------------------- suites

def case_product_formula(order, rng, bound):
    u = random_unit(order, rng, bound)
    res = product_formula_check(order, u)
    return {"inputs": {"u": _enc(u)},
            "checks": [_check("product_formula", res.lhs, res.rhs, res.passed, L=res.details["L"])]}


def case_ord_additivity(order, rng, bound):
    a = random_integral_ideal(order, rng, min(bound, 5))
    x = random_nonzero_divisor(order, rng, min(bound, 5))
    ax = a.right_multiply(x)
    lhs = ord_of_quotient(order, ax.lattice)
    rhs = add(ord_of_quotient(order, build_left_ideal(order, [x]).lattice), ord_of_quotient(order, a.lattice))
    return {"inputs": {"x": _enc(x)},
            "checks": [_check("ord_additivity", _ords_json(lhs), _ords_json(rhs))]}


def case_norm_consistency(order, rng, bound):
    ideal = random_fractional_ideal(order, rng, min(bound, 5))
    r0 = ideal.denominator()
    k = rng.randint(2, 3)
    n1 = absolute_norm_ideal(ideal, r0)
    n2 = absolute_norm_ideal(ideal, r0 * k)
    b = random_integral_ideal(order, rng, min(bound, 5))
    pp = ord_prime_product_check(order, b)
    return {"inputs": {"r": [r0, r0 * k]},
            "checks": [_check("norm_r_independence", n1, n2),
                       _check("norm_prime_product", pp.lhs, pp.rhs, pp.passed)]}


def case_riemann_roch(order, rng, bound):
    ci = random_complete_ideal(order, rng, min(bound, 5))
    res = riemann_roch_check(ci)
    return {"inputs": {"infinite": _enc(ci.infinite)},
            "checks": [_check("riemann_roch", res.lhs, res.rhs, res.passed, norm=res.details["norm"])]}


def case_degree_consistency(order, rng, bound):
    ci = random_complete_ideal(order, rng, min(bound, 5))
    E = line_bundle_of_complete_ideal(ci)
    c1 = adeg_order_exact(E)
    c2 = deg_exact(order, div_of_ideal(ci))
    f1, f2 = adeg_order(E), deg(order, div_of_ideal(ci))
    return {"inputs": {"infinite": _enc(ci.infinite)},
            "checks": [_check("certificate", c1.to_json(), c2.to_json()),
                       _check("float", f1, f2, abs(f1 - f2) <= 1e-12)]}


def duality_shapes(order, max_n=3):
    """Every ``(n, rank)`` with ``n <= max_n`` and ``0 <= rank <= n``."""
    return [(n, r) for n in range(1, max_n + 1) for r in range(n + 1)]


def case_duality(order, rng, bound, shape=None, max_n=3):
    A = order.algebra
    if shape is None:
        shapes = duality_shapes(order, max_n)
        shape = shapes[rng.randrange(len(shapes))]
    n, r = shape
    V, gens = random_free_submodule(A, order, n, r, rng, min(bound, 3))
    checks = [v.to_json() for v in duality_check(order, V) + untwisted_duality_check(order, V)]
    return {"inputs": {"n": n, "rank": r}, "checks": checks}


def case_prime_structure(order, p):
    primes = primes_above(order, p)
    rad = order.local_structure(p).radical_basis
    total = sum(q.residue_dim for q in primes) + len(rad)
    checks = [_check("dimension_count", total, order.dim)]
    for q in primes:
        checks.append(_check(f"capacity[{q.index}]", q.residue_dim, q.capacity ** 2 * q.center_dim))
    return {"inputs": {"p": p}, "checks": checks}


def probe_submodules(A):
    """Fixed test submodules of ``A^2`` for ``A = M2(Q)``: ``A (1, x)`` for a few ``x``."""
    e11, e12 = A.basis_element(0), A.basis_element(1)
    xs = [A.zero(), A.add(A.unit, e11), A.add(e11, e12), A.add(A.unit, e12)]
    return [[[A.unit, x]] for x in xs]


def involution_probe(order, generator_sets=None):
    """Heights under transpose and under ``x -> P x^T P^-1`` with ``P = diag(1, 2)``."""
    A = order.algebra
    if generator_sets is None:
        generator_sets = probe_submodules(A)
    star1 = [list(r) for r in A.involution]
    star2 = transpose_conjugated(A, [1, 2])
    checks = []
    for k, gens in enumerate(generator_sets):
        res = involution_independence_probe(order, gens, star1, star2)
        checks.append({"name": f"involution_probe[{k}]", "status": "pass",
                       "lhs": rat_str(res["h_squared_1"]), "rhs": rat_str(res["h_squared_2"]),
                       "finding": "equal" if res["equal"] else "different",
                       "generators": [[_enc(x) for x in g] for g in gens]})
    return {"inputs": {"involution_2": "P x^T P^-1, P = diag(1,2)"}, "checks": checks}


def classical_case(a, b):
    from .corpus import integers

    Z = integers()
    V = free_submodule(Z.algebra, [[[a], [b]]])
    h = height(Z, V)
    hp = height(Z, orthogonal_complement(V))
    return {"inputs": {"a": a, "b": b},
            "checks": [_check("classical_height", h.h_squared, Fraction(a * a + b * b)),
                       _check("complement_height", h.h_squared, hp.h_squared)]}


def coprime_pairs(count, seed, bound=30):
    rng = random.Random(f"{seed}:classical")
    out = []
    while len(out) < count:
        a, b = rng.randint(-bound, bound), rng.randint(1, bound)
        if gcd(a, b) == 1 and (a, b) not in out:
            out.append((a, b))
    return out


RANDOM_SUITES = {
    "product_formula": case_product_formula,
    "ord_additivity": case_ord_additivity,
    "norm_consistency": case_norm_consistency,
    "riemann_roch": case_riemann_roch,
    "degree_consistency": case_degree_consistency,
    "duality": case_duality,
}

SUITES = tuple(RANDOM_SUITES) + ("prime_structure", "involution_probe", "classical")


def run_suite(order, suite, count=50, seed=7, bound=None):
    """List of case records ``{case, inputs, checks}``."""
    bound = coefficient_bound(bound)
    records = []
    if suite in RANDOM_SUITES:
        fn = RANDOM_SUITES[suite]
        shapes = duality_shapes(order)
        for i in range(count):
            rng = case_rng(seed, suite, order.name, i)
            if suite == "duality":
                # cycle through every (n, rank) so each shape is covered
                rec = fn(order, rng, bound, shapes[i % len(shapes)])
            else:
                rec = fn(order, rng, bound)
            records.append({"case": i, **rec})
    elif suite == "prime_structure":
        for i, p in enumerate(SMALL_PRIMES):
            records.append({"case": i, **case_prime_structure(order, p)})
    elif suite == "involution_probe":
        records.append({"case": 0, **involution_probe(order)})
    elif suite == "classical":
        for i, (a, b) in enumerate(coprime_pairs(count, seed)):
            records.append({"case": i, **classical_case(a, b)})
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return records


def summarize(records):
    counts = {"pass": 0, "fail": 0, "skip": 0}
    for rec in records:
        for c in rec["checks"]:
            counts[c["status"]] += 1
    return counts
