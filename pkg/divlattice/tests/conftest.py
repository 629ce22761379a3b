import pytest

from divlattice import corpus


@pytest.fixture
def L1():
    return corpus.lattice('L1')


@pytest.fixture
def L2():
    return corpus.lattice('L2')


@pytest.fixture
def L3():
    return corpus.lattice('L3')


@pytest.fixture
def elliptic():
    return corpus.resolution('elliptic')


@pytest.fixture(params=sorted(corpus.SINGULARITY_CLASSES))
def germ(request):
    """``(name, model, point class)`` for every single-point resolution"""
    name = request.param
    return name, corpus.resolution(name), corpus.SINGULARITY_CLASSES[name]
