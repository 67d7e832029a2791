import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from nca import _kernels_py, kernels
from nca.exact_linalg import hnf_basis

try:
    from nca import _kernels as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled extension not built")


def rows_strategy(ncols, m):
    return st.lists(st.lists(st.integers(0, m - 1), min_size=ncols, max_size=ncols), min_size=0, max_size=8)


def exact_hnf_mod(rows, ncols, m):
    """Hermite basis of ``span(rows) + m Z^n`` via the exact integer HNF, reduced mod m."""
    eye = [[m * int(i == j) for j in range(ncols)] for i in range(ncols)]
    h = hnf_basis([list(r) for r in rows] + eye, ncols)
    out = [[x % m if j > i else x for j, x in enumerate(r)] for i, r in enumerate(h)]
    return out


@given(st.sampled_from([4, 9, 12, 27, 32, 60]).flatmap(lambda m: st.tuples(st.just(m), rows_strategy(4, m))))
@settings(max_examples=120, deadline=None)
def test_python_hnf_mod_matches_exact_hnf(case):
    m, rows = case
    got = _kernels_py.hnf_mod(rows, 4, m)
    want = exact_hnf_mod(rows, 4, m)
    # same lattice, same diagonal; compare lattices through the exact HNF
    assert [got[i][i] for i in range(4)] == [want[i][i] for i in range(4)]
    eye = [[m * int(i == j) for j in range(4)] for i in range(4)]
    assert hnf_basis(got + eye, 4) == hnf_basis(want + eye, 4)


@needs_compiled
@given(st.sampled_from([2, 8, 81, 3125, 65521, (1 << 31) - 1]).flatmap(
    lambda m: st.tuples(st.just(m), rows_strategy(5, m))))
@settings(max_examples=150, deadline=None)
def test_compiled_hnf_matches_python(case):
    m, rows = case
    assert compiled.hnf_mod(rows, 5, m) == _kernels_py.hnf_mod(rows, 5, m)


@needs_compiled
@given(st.sampled_from([2, 3, 65521, 2147483629]).flatmap(lambda p: st.tuples(st.just(p), rows_strategy(5, p))))
@settings(max_examples=150, deadline=None)
def test_compiled_rref_matches_python(case):
    p, rows = case
    assert compiled.rref_mod_p(rows, 5, p) == _kernels_py.rref_mod_p(rows, 5, p)


@needs_compiled
@given(st.sampled_from([7, 1024, (1 << 31) - 1]).flatmap(lambda m: st.tuples(
    st.just(m),
    st.lists(st.lists(st.integers(0, m - 1), min_size=4, max_size=4), min_size=1, max_size=5),
    st.lists(st.lists(st.integers(0, m - 1), min_size=3, max_size=3), min_size=4, max_size=4))))
@settings(max_examples=150, deadline=None)
def test_compiled_matmul_matches_python(case):
    m, a, b = case
    assert compiled.matmul_mod(a, b, m) == _kernels_py.matmul_mod(a, b, m)


def test_large_modulus_uses_fallback():
    m = 1 << 40
    rows = [[m - 1, 3], [5, m - 7]]
    assert kernels.hnf_mod(rows, 2, m) == _kernels_py.hnf_mod(rows, 2, m)


def test_nullspace_is_left_kernel():
    rows = [[1, 2, 0], [2, 4, 0], [0, 1, 1]]
    ker = kernels.nullspace_mod_p(rows, 3, 5)
    assert len(ker) == 1
    for x in ker:
        assert kernels.matmul_mod([x], rows, 5) == [[0, 0, 0]]


def test_pure_python_switch():
    env = dict(os.environ, NCA_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from nca import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_compiled
def test_compiled_backend_selected():
    assert kernels.BACKEND == "cython"
