import pytest

from src.constants import FIXTURES_PATH
from src.decomposition import classify, decomposition_preorder
from src.exceptions import UnknownFixtureError
from src.fixtures.catalog import fixture, fixture_names
from src.fixtures.documents import load_path, save
from src.order import symbolic_local_finiteness

NAMES = ["chain_3", "line_3", "nat_discrete", "nat_opposite", "nat_usual", "pseudo_circle_4",
         "quadrant_4", "sierpinski", "two_point_discrete"]


def test_fixture_names():
    assert fixture_names() == NAMES


def test_unknown_fixture():
    with pytest.raises(UnknownFixtureError):
        fixture("nope")


@pytest.mark.parametrize("name", NAMES)
def test_fixture_files_match_catalog(name):
    path = FIXTURES_PATH / f"{name}.json"
    assert load_path(str(path)) == fixture(name).document
    assert path.read_text(encoding="utf-8") == save(fixture(name).document)


def test_pseudo_circle_4():
    d = fixture("pseudo_circle_4").document.value
    assert d.space.n == 4
    assert len(d.labels) == 2


def test_quadrant_4():
    d = fixture("quadrant_4").document.value
    assert d.space.n == 4
    assert len(d.labels) == 4
    pairs = {(a, b) for a, b in decomposition_preorder(d).pairs() if a != b}
    assert pairs == {("0", "1"), ("0", "2"), ("0", "3"), ("1", "3"), ("2", "3")}


@pytest.mark.parametrize("name, verdict", [
    ("chain_3", "stratification"),
    ("pseudo_circle_4", "alexandrov"),
    ("line_3", "poset-stratified"),
    ("quadrant_4", "stratification"),
    ("two_point_discrete", "stratification"),
])
def test_fixture_verdicts(name, verdict):
    assert classify(fixture(name).document.value).verdict == verdict


def test_nat_usual():
    report = symbolic_local_finiteness(fixture("nat_usual").document.value)
    assert report.locally_finite_poset
    assert not report.locally_finite_space


@pytest.mark.parametrize("name, modelled", [
    ("pseudo_circle_4", "indiscrete space with two points"),
    ("line_3", "real line"),
    ("quadrant_4", "positive quadrant"),
    ("two_point_discrete", "three partial orders"),
])
def test_notes_name_the_modelled_example(name, modelled):
    assert modelled in fixture(name).notes
