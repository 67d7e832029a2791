"""Named orders used by tests, the acceptance suite and the CLI presets."""

import re
from fractions import Fraction

from .algebra import AlgebraError, build_algebra, direct_sum, matrix_algebra, number_field, quaternion, rational
from .orders_ideals import OrderLattice, build_order


def _standard_basis(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def integers() -> OrderLattice:
    return build_order(rational(), [[1]], True, "Z")


def gaussian_integers() -> OrderLattice:
    A = number_field([1, 0, 1], involution=[0, -1], name="Q(i)")
    return build_order(A, _standard_basis(2), True, "Z[i]")


def lipschitz() -> OrderLattice:
    return build_order(quaternion(-1, -1), _standard_basis(4), False, "lipschitz")


def hurwitz() -> OrderLattice:
    h = Fraction(1, 2)
    basis = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [h, h, h, h]]
    return build_order(quaternion(-1, -1), basis, True, "hurwitz")


def matrix_order(m: int) -> OrderLattice:
    A = matrix_algebra(m)
    return build_order(A, _standard_basis(m * m), True, f"M{m}(Z)")


def gaussian_plus_m2() -> OrderLattice:
    gi = number_field([1, 0, 1], involution=[0, -1], name="Q(i)")
    A = direct_sum([gi, matrix_algebra(2)])
    return build_order(A, _standard_basis(A.dim), True, "Z[i]+M2(Z)")


PRESETS = {
    "Z": integers,
    "Z[i]": gaussian_integers,
    "lipschitz": lipschitz,
    "hurwitz": hurwitz,
    "Z[i]+M2(Z)": gaussian_plus_m2,
}

_MATRIX_PRESET = re.compile(r"^M(\d+)\(Z\)$")


def preset(name: str, n=None) -> OrderLattice:
    """Look up a preset; ``Mn(Z)`` takes its size from ``n``, ``M3(Z)`` inline."""
    if name in PRESETS:
        return PRESETS[name]()
    if name == "Mn(Z)":
        if n is None:
            raise AlgebraError("preset 'Mn(Z)' needs a matrix size 'n'")
        return matrix_order(int(n))
    m = _MATRIX_PRESET.match(name)
    if m:
        return matrix_order(int(m.group(1)))
    raise AlgebraError(f"unknown order preset {name!r}")


def order_from_spec(algebra_spec, order_spec) -> OrderLattice:
    """Build an order from the workspace schema.

    ``order_spec`` is a preset name, ``{"preset": name, "n": size}`` or
    ``{"basis": [[rat, ...], ...], "known_maximal": bool}``; the basis form
    needs ``algebra_spec``.
    """
    if isinstance(order_spec, str):
        return preset(order_spec)
    if not isinstance(order_spec, dict):
        raise AlgebraError(f"order spec must be a string or object: {order_spec!r}")
    if "preset" in order_spec:
        return preset(order_spec["preset"], order_spec.get("n"))
    if "basis" not in order_spec:
        raise AlgebraError("order spec needs 'basis' or 'preset'")
    if algebra_spec is None:
        raise AlgebraError("an explicit order basis needs an algebra spec")
    A = build_algebra(algebra_spec)
    basis = [[Fraction(c) for c in row] for row in order_spec["basis"]]
    return build_order(A, basis, bool(order_spec.get("known_maximal", False)), order_spec.get("name", ""))


def product_formula_corpus():
    return [integers(), gaussian_integers(), lipschitz(), hurwitz(), matrix_order(2), matrix_order(3),
            gaussian_plus_m2()]


def maximal_corpus():
    """Known-maximal orders whose twisted trace form is integral."""
    return [integers(), gaussian_integers(), hurwitz(), matrix_order(2), matrix_order(3), gaussian_plus_m2()]
