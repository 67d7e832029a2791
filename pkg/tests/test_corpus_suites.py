import pytest

from nca import corpus, suites
from nca.orders_ideals import discriminant


def test_presets():
    assert corpus.preset("M3(Z)").dim == 9
    assert corpus.preset("Mn(Z)", n=2).dim == 4
    assert corpus.preset("Z[i]+M2(Z)").dim == 6
    with pytest.raises(ValueError):
        corpus.preset("M2(Q)")


def test_order_from_explicit_basis():
    order = corpus.order_from_spec({"type": "number_field", "min_poly": ["1", "0", "1"], "involution": ["0", "-1"]},
                                   {"basis": [["1", "0"], ["0", "1"]], "known_maximal": True, "name": "gauss"})
    assert order.name == "gauss" and discriminant(order) == -4


def test_corpora():
    names = [o.name for o in corpus.product_formula_corpus()]
    assert len(names) == 7 and "lipschitz" in names
    assert all(o.known_maximal for o in corpus.maximal_corpus())


def test_case_seeding_does_not_depend_on_run_length(M2):
    short = suites.run_suite(M2, "riemann_roch", 2, seed=3)
    long = suites.run_suite(M2, "riemann_roch", 5, seed=3)
    assert long[:2] == short


def test_duality_cycles_all_shapes(hurwitz):
    shapes = suites.duality_shapes(hurwitz)
    records = suites.run_suite(hurwitz, "duality", len(shapes), seed=1)
    assert [(r["inputs"]["n"], r["inputs"]["rank"]) for r in records] == shapes


def test_summary_counts():
    rec = [{"checks": [{"status": "pass"}, {"status": "skip"}]}, {"checks": [{"status": "fail"}]}]
    assert suites.summarize(rec) == {"pass": 1, "fail": 1, "skip": 1}


def test_coefficient_bound_env(monkeypatch):
    monkeypatch.setenv("NCA_COEFF_BOUND", "4")
    assert suites.coefficient_bound() == 4
    assert suites.coefficient_bound(2) == 2


def test_unknown_suite(M2):
    with pytest.raises(ValueError):
        suites.run_suite(M2, "nope")
