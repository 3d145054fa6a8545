import pytest
from hypothesis import strategies as st

from src.fixtures.catalog import fixture
from src.order import proset_from_relation
from src.topology import FiniteSpace


@pytest.fixture
def line_3():
    return fixture("line_3").document.value


@pytest.fixture
def pseudo_circle_4():
    return fixture("pseudo_circle_4").document.value


@pytest.fixture
def quadrant_4():
    return fixture("quadrant_4").document.value


@pytest.fixture
def chain_3():
    return fixture("chain_3").document.value


@pytest.fixture
def two_point_discrete():
    return fixture("two_point_discrete").document.value


@pytest.fixture
def sierpinski():
    return fixture("sierpinski").document.value


def space(points, min_open):
    index = {name: i for i, name in enumerate(points)}
    return FiniteSpace(tuple(points), tuple(sum(1 << index[y] for y in min_open[x]) for x in points))


@st.composite
def prosets(draw, max_size=4):
    """Random relations on "0".."n-1", closed to a preorder."""
    n = draw(st.integers(min_value=0, max_value=max_size))
    names = tuple(str(i) for i in range(n))
    pairs = draw(st.lists(st.tuples(st.sampled_from(names), st.sampled_from(names)), max_size=8)) if n else []
    return proset_from_relation(names, pairs)


@st.composite
def decompositions(draw, max_size=4):
    from src.decomposition import Decomposition
    from src.order import alexandrov_space

    p = draw(prosets(max_size))
    blocks = draw(st.lists(st.integers(min_value=0, max_value=max(p.n - 1, 0)), min_size=p.n, max_size=p.n))
    strata = {}
    for point, block in zip(p.elements, blocks):
        strata.setdefault(f"S{block}", []).append(point)
    return Decomposition.from_strata(alexandrov_space(p), strata)
