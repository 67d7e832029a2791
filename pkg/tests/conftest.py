import pytest

from nca import corpus


@pytest.fixture(scope="session")
def Z():
    return corpus.integers()


@pytest.fixture(scope="session")
def Zi():
    return corpus.gaussian_integers()


@pytest.fixture(scope="session")
def lipschitz():
    return corpus.lipschitz()


@pytest.fixture(scope="session")
def hurwitz():
    return corpus.hurwitz()


@pytest.fixture(scope="session")
def M2():
    return corpus.matrix_order(2)


@pytest.fixture(scope="session")
def M3():
    return corpus.matrix_order(3)


@pytest.fixture(scope="session")
def Zi_M2():
    return corpus.gaussian_plus_m2()


@pytest.fixture(scope="session")
def full_corpus():
    return corpus.product_formula_corpus()


@pytest.fixture(scope="session")
def maximal_corpus():
    return corpus.maximal_corpus()
