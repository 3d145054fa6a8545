import logging

import pytest
from hypothesis import given, settings

from conftest import decompositions, space
from src.decomposition import (Decomposition,
                               PosetStratification,
                               alexandrov_equivalences,
                               check_poset_stratified_wrt,
                               classify,
                               coarsen,
                               decomposition_preorder,
                               decomposition_space,
                               final_family_alexandrov,
                               frontier_equivalences,
                               induced_decomposition,
                               initial_order_check,
                               inclusion_is_monotone,
                               is_stratification,
                               locally_finite_decomposition,
                               minimal_closed_union,
                               open_cover_family,
                               pointwise,
                               poset_stratified_equivalences,
                               poset_stratified_space,
                               quotient_by_filtering,
                               refinement_never_open,
                               semicontinuity,
                               theorem_A,
                               theorem_B)
from src.exceptions import (BoundExceededError,
                            InvariantViolation,
                            PreconditionError,
                            StratumMismatchError)
from src.order import alexandrov_space, proset_from_relation
from src.topology import SpaceMap, subspace

SIERPINSKI_01 = space(["0", "1"], {"0": ["0", "1"], "1": ["1"]})
INDISCRETE_12 = space(["1", "2"], {"1": ["1", "2"], "2": ["1", "2"]})

DIAMOND = proset_from_relation(["0", "1", "2", "3"], [("0", "1"), ("0", "2"), ("1", "3"), ("2", "3")])
CHAIN = proset_from_relation(["0", "1", "2", "3"], [("0", "1"), ("1", "2"), ("2", "3")])


def strict(p):
    return {(a, b) for a, b in p.pairs() if a != b}


def test_strata_must_be_disjoint(line_3):
    with pytest.raises(InvariantViolation) as e:
        Decomposition.from_strata(line_3.space, {"0": ["m", "z"], "1": ["z", "p"]})
    assert e.value.invariant == "strata not disjoint"


def test_strata_must_cover_and_be_nonempty(line_3):
    with pytest.raises(InvariantViolation) as e:
        Decomposition.from_strata(line_3.space, {"0": ["m", "z"]})
    assert e.value.invariant == "strata cover the space"
    with pytest.raises(InvariantViolation) as e:
        Decomposition.from_strata(line_3.space, {"0": ["m", "z", "p"], "1": []})
    assert e.value.invariant == "strata nonempty"


def test_decomposition_basics(line_3):
    assert line_3.labels == ("0", "1")
    assert line_3.strata == {"0": {"m", "z"}, "1": {"p"}}
    assert line_3.stratum_of("z") == "0"
    assert line_3 == Decomposition.from_strata(line_3.space, {"1": ["p"], "0": ["z", "m"]})


def test_decomposition_space(line_3, pseudo_circle_4, quadrant_4):
    assert decomposition_space(line_3) == SIERPINSKI_01
    assert decomposition_space(pseudo_circle_4) == INDISCRETE_12
    assert decomposition_space(quadrant_4) == quadrant_4.space


@given(decompositions(max_size=4))
def test_decomposition_space_matches_filtering(d):
    assert decomposition_space(d) == quotient_by_filtering(d)


def test_decomposition_preorder(line_3, pseudo_circle_4, quadrant_4):
    assert strict(decomposition_preorder(line_3)) == {("0", "1")}
    assert strict(decomposition_preorder(pseudo_circle_4)) == {("1", "2"), ("2", "1")}
    assert decomposition_preorder(quadrant_4) == DIAMOND


def test_minimal_closed_union(line_3):
    assert line_3.space.names(minimal_closed_union(line_3, "1")) == {"m", "z", "p"}
    assert line_3.space.names(minimal_closed_union(line_3, "0")) == {"m", "z"}


def test_alexandrov_equivalences(line_3, pseudo_circle_4):
    for d in (line_3, pseudo_circle_4):
        result = alexandrov_equivalences(d)
        assert (result.is_alexandrov, result.identity_is_homeomorphism, result.pi_continuous) == (True, True, True)


def test_locally_finite_decomposition(line_3, quadrant_4):
    assert locally_finite_decomposition(line_3)
    assert locally_finite_decomposition(quadrant_4)
    empty = Decomposition.from_strata(space([], {}), {})
    assert locally_finite_decomposition(empty)


@pytest.mark.parametrize("name, expected", [
    ("quadrant_4", True),
    ("line_3", False),
    ("pseudo_circle_4", False),
])
def test_frontier_equivalences(name, expected, request):
    result = frontier_equivalences(request.getfixturevalue(name))
    assert set(result.values().values()) == {expected}
    assert bool(result.witnesses) is not expected


def test_frontier_witness_pseudo_circle(pseudo_circle_4):
    result = frontier_equivalences(pseudo_circle_4)
    assert "{x}" in result.witnesses["frontier_condition"]


@pytest.mark.parametrize("name, expected", [
    ("line_3", True),
    ("pseudo_circle_4", False),
    ("quadrant_4", True),
])
def test_poset_stratified_equivalences(name, expected, request):
    result = poset_stratified_equivalences(request.getfixturevalue(name))
    assert set(result.values().values()) == {expected}


def test_is_stratification(quadrant_4, line_3, pseudo_circle_4):
    assert is_stratification(quadrant_4)
    verdict = is_stratification(line_3)
    assert not verdict
    assert verdict.reasons == ("frontier condition fails",)
    verdict = is_stratification(pseudo_circle_4)
    assert verdict.reasons == ("frontier condition fails",)


def test_check_poset_stratified_wrt(quadrant_4, line_3):
    result = check_poset_stratified_wrt(quadrant_4, DIAMOND)
    assert (result.continuous, result.surjective, result.open) == (True, True, True)
    result = check_poset_stratified_wrt(quadrant_4, CHAIN)
    assert (result.continuous, result.surjective, result.open) == (True, True, False)
    reversed_order = proset_from_relation(["0", "1"], [("1", "0")])
    assert not check_poset_stratified_wrt(line_3, reversed_order).continuous


def test_check_poset_stratified_wrt_rejects_extra_ids(line_3):
    order = proset_from_relation(["0", "1", "2"], [("0", "1")])
    with pytest.raises(StratumMismatchError):
        check_poset_stratified_wrt(line_3, order)


def test_coarsen(pseudo_circle_4, quadrant_4):
    coarse, stratification = coarsen(pseudo_circle_4)
    assert coarse.strata == {"1": {"a", "b", "x", "y"}}
    assert stratification.order.elements == ("1",)
    same, _ = coarsen(quadrant_4)
    assert same == quadrant_4


@settings(max_examples=50)
@given(decompositions(max_size=4))
def test_coarsen_is_poset_stratified(d):
    coarse, _ = coarsen(d)
    assert poset_stratified_equivalences(coarse, search=False).holds


def test_theorem_a(quadrant_4, chain_3, line_3):
    assert theorem_A(quadrant_4).order == DIAMOND
    order = theorem_A(chain_3).order
    assert strict(order) == {("c0", "c1"), ("c0", "c2"), ("c1", "c2")}
    with pytest.raises(PreconditionError) as e:
        theorem_A(line_3)
    assert e.value.clause == "frontier condition fails"


def test_theorem_b(quadrant_4, line_3):
    result = theorem_B(PosetStratification(quadrant_4, DIAMOND))
    assert result.verdict
    order = proset_from_relation(["0", "1"], [("0", "1")])
    with pytest.raises(PreconditionError) as e:
        theorem_B(PosetStratification(line_3, order))
    assert "not open" in e.value.clause


def test_poset_stratification_requires_continuity(line_3):
    discrete = proset_from_relation(["0", "1"], [])
    with pytest.raises(InvariantViolation):
        PosetStratification(line_3, discrete)


def test_initial_order_check(two_point_discrete, quadrant_4, line_3):
    report = initial_order_check(two_point_discrete)
    assert len(report.valid_orders) == 3
    report = initial_order_check(quadrant_4)
    reversed_chain = proset_from_relation(["0", "1", "2", "3"], [("0", "2"), ("2", "1"), ("1", "3")])
    assert set(report.valid_orders) == {DIAMOND, CHAIN, reversed_chain}
    report = initial_order_check(line_3)
    assert [strict(order) for order in report.valid_orders] == [{("0", "1")}]


def test_initial_order_check_preconditions(pseudo_circle_4, quadrant_4):
    with pytest.raises(PreconditionError):
        initial_order_check(pseudo_circle_4)
    with pytest.raises(BoundExceededError):
        initial_order_check(quadrant_4, bound=3)


def test_refinement_never_open(quadrant_4, chain_3, line_3):
    assert refinement_never_open(quadrant_4).tested == 2
    assert refinement_never_open(chain_3).tested == 0
    with pytest.raises(PreconditionError):
        refinement_never_open(line_3)


def test_semicontinuity(line_3, quadrant_4, pseudo_circle_4):
    result = semicontinuity(line_3)
    assert (result.sat_open_open, result.sat_closed_closed, result.pi_open, result.pi_closed) == \
        (False, True, False, True)
    assert result.upper_semicontinuous
    assert not result.lower_semicontinuous
    result = semicontinuity(quadrant_4)
    assert result.continuous
    result = semicontinuity(pseudo_circle_4)
    assert (result.sat_open_open, result.sat_closed_closed, result.pi_open, result.pi_closed) == \
        (False, False, False, False)


def test_induced_decomposition_and_inclusion(pseudo_circle_4):
    x = pseudo_circle_4.space
    piece = subspace(x, {"a", "b", "x"})
    f = SpaceMap.from_mapping(piece, x, {p: p for p in piece.points})
    induced = induced_decomposition(pseudo_circle_4, f)
    assert induced.strata == {"1": {"a", "x"}, "2": {"b"}}
    assert inclusion_is_monotone(pseudo_circle_4, f)


def test_final_family_alexandrov(pseudo_circle_4, line_3):
    assert final_family_alexandrov(pseudo_circle_4, open_cover_family(pseudo_circle_4.space))
    sub = subspace(line_3.space, {"p"})
    partial = [SpaceMap.from_mapping(sub, line_3.space, {"p": "p"})]
    with pytest.raises(PreconditionError):
        final_family_alexandrov(line_3, partial)


def test_poset_stratified_space_drops_empty_ids(line_3, caplog):
    order = proset_from_relation(["0", "1", "2"], [("0", "1"), ("1", "2")])
    with caplog.at_level(logging.INFO, logger="src.decomposition"):
        ps = poset_stratified_space(line_3.space, {"m": "0", "z": "0", "p": "1"}, order)
    assert ps.order.elements == ("0", "1")
    assert ps.dec == line_3
    assert "['2']" in caplog.text


@pytest.mark.parametrize("name, verdict", [
    ("quadrant_4", "stratification"),
    ("chain_3", "stratification"),
    ("line_3", "poset-stratified"),
    ("pseudo_circle_4", "alexandrov"),
])
def test_classify(name, verdict, request):
    report = classify(request.getfixturevalue(name))
    assert report.verdict == verdict


def test_classify_report(pseudo_circle_4, line_3):
    report = classify(pseudo_circle_4)
    assert report.locally_closed == {"1": True, "2": True}
    assert report.shortfall("stratification") == ["frontier condition fails"]
    assert report.shortfall("alexandrov") == []
    assert classify(line_3).shortfall("stratification") == ["frontier condition fails"]
    data = report.to_dict()
    assert data["verdict"] == "alexandrov"
    assert data["semicontinuity"]["pi_open"] is False


def test_pointwise_is_the_space(sierpinski):
    d = pointwise(sierpinski)
    assert decomposition_space(d) == sierpinski
    assert semicontinuity(d).continuous


def test_classify_large_discrete_space():
    names = [f"p{i:02d}" for i in range(30)]
    report = classify(pointwise(space(names, {x: [x] for x in names})))
    assert report.verdict == "stratification"
    assert report.semicontinuity.continuous


def test_classify_large_chain():
    names = [f"c{i:02d}" for i in range(30)]
    chain = alexandrov_space(proset_from_relation(names, list(zip(names, names[1:]))))
    d = Decomposition.from_strata(chain, {"low": names[:15], "high": names[15:]})
    report = classify(d)
    assert report.verdict == "stratification"
    assert strict(report.preorder) == {("low", "high")}
    assert report.alexandrov.identity_is_homeomorphism


@settings(max_examples=50)
@given(decompositions(max_size=4))
def test_basis_saturation_matches_every_open_set(d):
    result = semicontinuity(d)
    x = d.space
    opens = x.open_masks()
    assert result.sat_open_open == all(x.is_open(d.saturate(u)) for u in opens)
    assert result.sat_closed_closed == all(x.is_closed(d.saturate(x.full & ~u)) for u in opens)
