import pytest
from hypothesis import given, strategies as st

from src.decomposition import Decomposition
from src.exceptions import BoundExceededError, InvalidParameterError
from src.fixtures.documents import save
from src.fixtures.generate import SplitMix64, generate


def test_splitmix_reference_values():
    rng = SplitMix64(0)
    assert rng.next() == 0xE220A8397B1DCDAF
    assert rng.next() == 0x6E789E6AA1B965F4


def test_density_zero_is_discrete():
    p = generate("preorder", 3, {"density": 0}, seed=12345).value
    assert p.pairs() == [("0", "0"), ("1", "1"), ("2", "2")]


def test_density_one_is_indiscrete():
    p = generate("preorder", 3, {"density": 1}, seed=99).value
    assert len(p.pairs()) == 9


@given(st.sampled_from(["preorder", "partition"]), st.integers(min_value=0, max_value=6),
       st.integers(min_value=0, max_value=2 ** 64 - 1))
def test_generate_is_deterministic(kind, n, seed):
    assert save(generate(kind, n, {}, seed)) == save(generate(kind, n, {}, seed))


@given(st.integers(min_value=1, max_value=8), st.integers(min_value=0, max_value=2 ** 32))
def test_partition_is_surjective_and_canonical(n, seed):
    k = (seed % n) + 1
    d = generate("partition", n, {"strata": k}, seed).value
    assert isinstance(d, Decomposition)
    assert d.labels == tuple(sorted(f"S{i}" for i in range(k)))
    first_seen = []
    for point in d.space.points:
        label = d.stratum_of(point)
        if label not in first_seen:
            first_seen.append(label)
    assert first_seen == [f"S{i}" for i in range(k)]


def test_empty_partition():
    d = generate("partition", 0, {}, 1).value
    assert d.labels == ()


@pytest.mark.parametrize("kind, n, params, seed", [
    ("lattice", 3, {}, 0),
    ("preorder", -1, {}, 0),
    ("preorder", 3, {"density": 1.5}, 0),
    ("preorder", 3, {"strata": 2}, 0),
    ("partition", 3, {"strata": 4}, 0),
    ("partition", 3, {"strata": 0}, 0),
    ("preorder", 3, {}, -1),
    ("preorder", 3, {}, 2 ** 64),
])
def test_invalid_parameters(kind, n, params, seed):
    with pytest.raises(InvalidParameterError):
        generate(kind, n, params, seed)


def test_size_limit_is_independent_of_the_enumeration_guard(monkeypatch):
    monkeypatch.setenv("STRATKIT_MAX_POINTS", "3")
    assert len(generate("preorder", 30, {"density": 0.05}, 3).value.elements) == 30
    with pytest.raises(BoundExceededError):
        generate("preorder", 65, {}, 0)
