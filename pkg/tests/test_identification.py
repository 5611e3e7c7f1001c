"""Minimal adjustment sets and instrumental variables."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dagscope import (
    Dag,
    EffectKind,
    InstrumentResult,
    InvalidQuery,
    MissingRoles,
    MultipleRoles,
    OperationCancelled,
    OverlappingRoles,
    UnknownVariable,
    VariableStatus,
    find_instruments,
    is_instrument,
    is_sufficient_adjustment,
    list_minimal_adjustment_sets,
)

from diagrams import CLASSIC, IV, IV_COND, MEDIATION, SMOKING, TRIANGLE
from strategies import dags

S = VariableStatus
TOTAL = EffectKind.TOTAL
DIRECT = EffectKind.DIRECT


def names(report) -> list[list[str]]:
    return [sorted(s) for s in report.sets]


# -- sufficiency of a single candidate set -----------------------------------


def test_classic_spot_checks():
    assert is_sufficient_adjustment(CLASSIC, ["A", "Z"], TOTAL)
    assert is_sufficient_adjustment(CLASSIC, ["B", "Z"], TOTAL)
    assert not is_sufficient_adjustment(CLASSIC, ["Z"], TOTAL)
    assert not is_sufficient_adjustment(CLASSIC, [], TOTAL)


def test_blocking_the_mediator_breaks_the_total_effect():
    assert not is_sufficient_adjustment(MEDIATION, ["C1", "C2", "M"], TOTAL)
    assert is_sufficient_adjustment(MEDIATION, ["C1", "C2", "M"], DIRECT)


def test_direct_effect_needs_the_mediator():
    assert not is_sufficient_adjustment(MEDIATION, ["C1", "C2"], DIRECT)


def test_role_overlap_is_rejected():
    with pytest.raises(OverlappingRoles):
        is_sufficient_adjustment(CLASSIC, ["E"], TOTAL)


def test_unknown_member_is_rejected():
    with pytest.raises(UnknownVariable):
        is_sufficient_adjustment(CLASSIC, ["Q"], TOTAL)


def test_sufficiency_requires_roles():
    with pytest.raises(MissingRoles):
        is_sufficient_adjustment(TRIANGLE, ["M"], TOTAL)


# -- minimal set enumeration ---------------------------------------------


def test_classic_minimal_sets():
    report = list_minimal_adjustment_sets(CLASSIC)
    assert report.feasible
    assert names(report) == [["A", "Z"], ["B", "Z"]]


def test_classic_direct_equals_total():
    # No mediators, so both effect kinds demand the same adjustments.
    total = list_minimal_adjustment_sets(CLASSIC, TOTAL)
    direct = list_minimal_adjustment_sets(CLASSIC, DIRECT)
    assert total.sets == direct.sets


def test_classic_unobserved_prunes_candidates():
    report = list_minimal_adjustment_sets(CLASSIC.set_status("B", S.UNOBSERVED))
    assert names(report) == [["A", "Z"]]


def test_mediation_total_versus_direct():
    assert names(list_minimal_adjustment_sets(MEDIATION, TOTAL)) == [["C1", "C2"]]
    assert names(list_minimal_adjustment_sets(MEDIATION, DIRECT)) == [["C2", "M"]]


def test_forcing_the_mediator_kills_the_total_effect():
    report = list_minimal_adjustment_sets(MEDIATION.set_status("M", S.ADJUSTED), TOTAL)
    assert not report.feasible
    assert report.sets == ()


def test_smoking_minimal_set():
    assert names(list_minimal_adjustment_sets(SMOKING)) == [["smoking"]]


def test_unconfounded_pair_needs_nothing():
    g = Dag.of([("X", S.EXPOSURE), ("Y", S.OUTCOME)], [("X", "Y")])
    report = list_minimal_adjustment_sets(g)
    assert report.feasible and report.sets == (frozenset(),)


def test_enumeration_requires_roles():
    with pytest.raises(MissingRoles):
        list_minimal_adjustment_sets(TRIANGLE)


def test_enumeration_can_be_cancelled():
    with pytest.raises(OperationCancelled):
        list_minimal_adjustment_sets(CLASSIC, poll=lambda: True)


@given(dags(max_vertices=5, min_vertices=2, statuses=True), st.sampled_from(list(EffectKind)))
def test_reported_sets_are_sound_and_minimal(g, effect):
    if not g.exposures or not g.outcomes:
        return
    report = list_minimal_adjustment_sets(g, effect)
    assert report.feasible == bool(report.sets)
    forced = frozenset(g.adjusted)
    hidden = set(g.unobserved)
    for z in report.sets:
        assert forced <= z
        assert not (z & hidden)
        assert is_sufficient_adjustment(g, z, effect)
        for member in z - forced:
            assert not is_sufficient_adjustment(g, z - {member}, effect)


# -- instruments -----------------------------------------------------------


def test_plain_instrument():
    assert find_instruments(IV) == [InstrumentResult("I", frozenset())]


def test_conditional_instrument():
    assert find_instruments(IV_COND) == [InstrumentResult("I", frozenset({"W"}))]


def test_fork_has_no_instrument():
    assert find_instruments(SMOKING) == []


def test_is_instrument_spot_checks():
    assert is_instrument(IV, "I")
    assert not is_instrument(IV, "U")
    assert not is_instrument(IV_COND, "I")
    assert is_instrument(IV_COND, "I", ["W"])
    assert not is_instrument(IV_COND, "W")


def test_conditioning_below_the_outcome_disqualifies():
    probe = IV_COND.add_variable("V").toggle_edge("Y", "V")
    assert not is_instrument(probe, "I", ["V"])


def test_instrument_query_errors():
    with pytest.raises(InvalidQuery):
        is_instrument(IV, "X")
    with pytest.raises(InvalidQuery):
        is_instrument(IV, "I", ["X"])
    with pytest.raises(InvalidQuery):
        is_instrument(IV, "I", ["U"])
    with pytest.raises(UnknownVariable):
        is_instrument(IV, "Q")


def test_instrument_search_needs_single_roles():
    with pytest.raises(MultipleRoles):
        find_instruments(TRIANGLE)
    two = CLASSIC.set_status("A", S.EXPOSURE)
    with pytest.raises(MultipleRoles):
        find_instruments(two)


def test_instrument_search_can_be_cancelled():
    with pytest.raises(OperationCancelled):
        find_instruments(IV, poll=lambda: True)


@given(dags(max_vertices=6, min_vertices=2), st.data())
def test_found_instruments_pass_the_membership_test(g, data):
    order = sorted(g.names)
    e = data.draw(st.sampled_from(order))
    o = data.draw(st.sampled_from([n for n in order if n != e]))
    g = g.set_status(e, S.EXPOSURE).set_status(o, S.OUTCOME)
    for hit in find_instruments(g):
        assert is_instrument(g, hit.instrument, hit.conditioning_set)
