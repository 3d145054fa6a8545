import pytest
from hypothesis import given

from conftest import prosets
from src.exceptions import (DuplicatePointError,
                            InvariantViolation,
                            NotAPosetError,
                            UnknownFamilyError,
                            UnknownPointError)
from src.oracle import enumerate_structures
from src.order import (MonotoneMap,
                       Poset,
                       adjunction_roundtrips,
                       alexandrov_space,
                       as_poset,
                       covers,
                       finite_local_finiteness,
                       hasse,
                       is_poset,
                       is_refinement,
                       opposite,
                       poset_reflection,
                       proset_from_relation,
                       restrict,
                       singleton_locally_closed_check,
                       symbolic_local_finiteness,
                       up_down_sets)
from src.topology import map_check, open_sets, specialization_preorder

DIAMOND = [("0", "1"), ("0", "2"), ("1", "3"), ("2", "3")]


@pytest.fixture
def chain():
    return proset_from_relation(["0", "1", "2"], [("0", "1"), ("1", "2")])


@pytest.fixture
def diamond():
    return proset_from_relation(["0", "1", "2", "3"], DIAMOND)


@pytest.fixture
def two_cycle():
    return proset_from_relation(["i", "j"], [("i", "j"), ("j", "i")])


def test_proset_from_relation_closes(chain):
    assert chain.leq("0", "2")
    assert not chain.leq("2", "0")


def test_proset_from_relation_discrete():
    p = proset_from_relation(["0", "1"], [])
    assert p.pairs() == [("0", "0"), ("1", "1")]


def test_proset_from_relation_without_closing():
    with pytest.raises(InvariantViolation) as e:
        proset_from_relation(["0", "1", "2"], [("0", "0"), ("1", "1"), ("2", "2"), ("0", "1"), ("1", "2")],
                             close=False)
    assert e.value.invariant == "not transitive"
    assert "(0, 2)" in str(e.value)
    with pytest.raises(InvariantViolation) as e:
        proset_from_relation(["0"], [], close=False)
    assert e.value.invariant == "not reflexive"


def test_proset_from_relation_errors():
    with pytest.raises(UnknownPointError):
        proset_from_relation(["0"], [("0", "1")])
    with pytest.raises(DuplicatePointError):
        proset_from_relation(["0", "0"], [])


def test_is_poset(chain, two_cycle, pseudo_circle_4):
    from src.decomposition import decomposition_preorder

    assert is_poset(chain)
    verdict = is_poset(two_cycle)
    assert not verdict
    assert verdict.witness == ("i", "j")
    assert not is_poset(decomposition_preorder(pseudo_circle_4))
    with pytest.raises(NotAPosetError):
        as_poset(two_cycle)


def test_alexandrov_space(diamond, quadrant_4):
    sierpinski = alexandrov_space(proset_from_relation(["0", "1"], [("0", "1")]))
    assert set(open_sets(sierpinski)) == {frozenset(), frozenset({"1"}), frozenset({"0", "1"})}
    assert alexandrov_space(diamond) == quadrant_4.space
    antichain = alexandrov_space(proset_from_relation(["0", "1"], []))
    assert len(open_sets(antichain)) == 4


def test_adjunction_roundtrips(two_cycle, pseudo_circle_4):
    report = adjunction_roundtrips(two_cycle, pseudo_circle_4.space)
    assert report.unit_is_identity
    assert report.counit_is_homeomorphism
    assert alexandrov_space(specialization_preorder(pseudo_circle_4.space)).min_open == \
        pseudo_circle_4.space.min_open


@given(prosets())
def test_adjunction_roundtrips_random(p):
    assert specialization_preorder(alexandrov_space(p)) == p
    assert adjunction_roundtrips(p, alexandrov_space(p)).unit_is_identity


def test_poset_reflection(two_cycle, chain):
    poset, quotient = poset_reflection(two_cycle)
    assert poset.elements == ("i",)
    assert quotient.as_dict() == {"i": "i", "j": "i"}
    same, bijection = poset_reflection(chain)
    assert same == chain
    assert sorted(bijection.assignment) == [0, 1, 2]
    cycle = proset_from_relation(["0", "1", "2"], [("0", "1"), ("1", "2"), ("2", "0")])
    assert poset_reflection(cycle)[0].n == 1


def test_up_down_sets(diamond, chain):
    assert up_down_sets(diamond, "3") == ({"3"}, {"0", "1", "2", "3"})
    assert up_down_sets(chain, "1") == ({"1", "2"}, {"0", "1"})
    antichain = proset_from_relation(["a", "b"], [])
    assert up_down_sets(antichain, "a") == ({"a"}, {"a"})
    with pytest.raises(UnknownPointError):
        up_down_sets(chain, "9")


def test_singleton_locally_closed_check(chain, two_cycle):
    assert singleton_locally_closed_check(chain)
    assert not singleton_locally_closed_check(two_cycle)


@given(prosets())
def test_singleton_locally_closed_check_random(p):
    assert singleton_locally_closed_check(p) == is_poset(p).holds


def test_hasse(chain, diamond):
    assert hasse(chain) == [("0", "1"), ("1", "2")]
    assert hasse(diamond) == DIAMOND
    assert hasse(proset_from_relation(["a", "b"], [])) == []


def test_hasse_rejects_prosets(two_cycle):
    with pytest.raises(NotAPosetError):
        hasse(two_cycle)


def test_covers_on_a_proset(two_cycle):
    assert covers(two_cycle) == [("i", "j"), ("j", "i")]


@given(prosets())
def test_covers_match_hasse_on_posets(p):
    if is_poset(p):
        assert covers(p) == hasse(p)


def test_opposite_and_restrict(diamond):
    assert opposite(diamond).leq("3", "0")
    sub = restrict(diamond, ["1", "2", "3"])
    assert sub.pairs() == [("1", "1"), ("1", "3"), ("2", "2"), ("2", "3"), ("3", "3")]
    assert isinstance(restrict(as_poset(diamond), ["0"]), Poset)


def test_is_refinement(diamond):
    chain = proset_from_relation(["0", "1", "2", "3"], [("0", "1"), ("1", "2"), ("2", "3")])
    assert is_refinement(diamond, chain)
    verdict = is_refinement(chain, diamond)
    assert not verdict
    assert verdict.witness == ("1", "2")
    with pytest.raises(InvariantViolation):
        is_refinement(diamond, proset_from_relation(["0"], []))


def test_finite_local_finiteness(diamond):
    report = finite_local_finiteness(diamond)
    assert report.locally_finite_space
    assert report.locally_finite_poset


@pytest.mark.parametrize("tag, space, poset", [
    ("nat_usual", False, True),
    ("NatUsual", False, True),
    ("nat_discrete", True, True),
    ("nat-opposite", True, True),
])
def test_symbolic_local_finiteness(tag, space, poset):
    report = symbolic_local_finiteness(tag)
    assert report.locally_finite_space is space
    assert report.locally_finite_poset is poset


def test_symbolic_local_finiteness_unknown():
    with pytest.raises(UnknownFamilyError):
        symbolic_local_finiteness("integers")


def test_poset_reflection_is_idempotent():
    for n in range(4):
        for p in enumerate_structures("preorders", n):
            poset, quotient = poset_reflection(p)
            assert is_poset(poset)
            again, bijection = poset_reflection(poset)
            assert again == poset
            assert bijection.assignment == tuple(range(poset.n))


def test_hasse_closure_recovers_every_four_element_poset():
    for p in enumerate_structures("posets", 4):
        assert proset_from_relation(p.elements, hasse(p)) == p


def test_alexandrov_functor_on_maps():
    two = list(enumerate_structures("preorders", 2))
    assignments = [(0, 0), (0, 1), (1, 0), (1, 1)]
    for p in two:
        for q in two:
            for assignment in assignments:
                f = MonotoneMap(p, q, assignment)
                g = f.to_space_map()
                assert map_check(g, "continuous").holds == f.is_monotone().holds
                assert g.to_monotone().assignment == assignment
