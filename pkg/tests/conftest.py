import pytest

from stringcone.corpus import index_two_cone, orthant, square_cone


@pytest.fixture
def i2():
    return index_two_cone()


@pytest.fixture
def square():
    return square_cone()


@pytest.fixture(params=[2, 3, 4])
def orth(request):
    return orthant(request.param)
