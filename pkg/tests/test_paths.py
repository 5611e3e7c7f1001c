"""Path enumeration, open/closed rules, classification, highlighting."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dagscope import (
    InvalidQuery,
    MissingRoles,
    Path,
    PathClass,
    VariableStatus,
    atomic_direct_effects,
    classify_path,
    d_separated,
    enumerate_paths,
    highlight_edges,
    is_path_open,
)
from dagscope.oracle import d_separated_brute_force

from diagrams import CLASSIC, MEDIATION, SMOKING, TRIANGLE
from strategies import dags, subsets_of

S = VariableStatus

BIAS_PATH = Path(("E", "A", "Z", "B", "D"), (False, True, False, True))
FORK_PATH = Path(("matches", "smoking", "cancer"), (False, True))


# -- enumeration ------------------------------------------------------------


def test_classic_has_five_paths():
    paths = enumerate_paths(CLASSIC, ["E"], ["D"])
    assert [p.vertices for p in paths] == [
        ("E", "A", "Z", "B", "D"),
        ("E", "A", "Z", "D"),
        ("E", "D"),
        ("E", "Z", "B", "D"),
        ("E", "Z", "D"),
    ]


def test_classic_single_causal_path():
    paths = enumerate_paths(CLASSIC, ["E"], ["D"])
    assert sum(all(p.forwards) for p in paths) == 1


def test_smoking_paths():
    paths = enumerate_paths(SMOKING, ["matches"], ["cancer"])
    assert [str(p) for p in paths] == [
        "matches -> cancer",
        "matches <- smoking -> cancer",
    ]


def test_triangle_paths():
    paths = enumerate_paths(TRIANGLE, ["X"], ["Y"])
    assert [p.vertices for p in paths] == [("X", "M", "Y"), ("X", "Y")]


def test_max_length_bounds_edge_count():
    paths = enumerate_paths(CLASSIC, ["E"], ["D"], max_length=2)
    assert [p.vertices for p in paths] == [("E", "D"), ("E", "Z", "D")]


def test_enumerate_rejects_overlap():
    with pytest.raises(InvalidQuery):
        enumerate_paths(CLASSIC, ["E"], ["E", "D"])


def test_enumerate_rejects_empty_side():
    with pytest.raises(InvalidQuery):
        enumerate_paths(CLASSIC, [], ["D"])


def test_path_edges_orientation():
    assert BIAS_PATH.edges() == (("A", "E"), ("A", "Z"), ("B", "Z"), ("B", "D"))


# -- open/closed rules ------------------------------------------------------


def test_collider_closes_unconditioned():
    assert not is_path_open(CLASSIC, BIAS_PATH, [])


def test_conditioning_on_collider_opens():
    assert is_path_open(CLASSIC, BIAS_PATH, ["Z"])


def test_collider_descendant_opens():
    assert is_path_open(CLASSIC, Path(("A", "Z", "B"), (True, False)), ["D"])


def test_chain_member_closes():
    assert not is_path_open(CLASSIC, Path(("E", "A", "Z", "D"), (False, True, True)), ["A"])


def test_fork_member_closes():
    assert not is_path_open(SMOKING, FORK_PATH, ["smoking"])


def test_single_edge_always_open():
    assert is_path_open(CLASSIC, Path(("E", "D"), (True,)), ["A", "B", "Z"])


def test_path_must_exist_in_graph():
    with pytest.raises(InvalidQuery):
        is_path_open(CLASSIC, Path(("E", "B"), (True,)), [])


def test_path_must_not_revisit():
    with pytest.raises(InvalidQuery):
        is_path_open(CLASSIC, Path(("E", "D", "E"), (True, False)), [])


def test_path_needs_at_least_one_step():
    with pytest.raises(InvalidQuery):
        Path(("E",), ())


@given(dags(max_vertices=5, min_vertices=2), st.data())
def test_single_edge_paths_open_for_every_subset(g, data):
    if not g.edges:
        return
    u, v = data.draw(st.sampled_from(sorted(g.edges)))
    z = data.draw(subsets_of([n for n in g.names if n not in (u, v)]))
    assert is_path_open(g, Path((u, v), (True,)), z)


@given(dags(max_vertices=6, min_vertices=3), st.data())
def test_rule_monotonicity_on_enumerated_paths(g, data):
    pool = sorted(g.names)
    x = data.draw(st.sampled_from(pool))
    y = data.draw(st.sampled_from([n for n in pool if n != x]))
    paths = enumerate_paths(g, [x], [y])
    if not paths:
        return
    p = data.draw(st.sampled_from(paths))
    interior = p.vertices[1:-1]
    z = data.draw(subsets_of([n for n in g.names if n not in (x, y)]))
    colliders = {
        p.vertices[i]
        for i in range(1, len(p.vertices) - 1)
        if p.forwards[i - 1] and not p.forwards[i]
    }
    # Closing direction: adding a chain or fork interior always closes.
    for m in interior:
        if m not in colliders:
            assert not is_path_open(g, p, z | {m})
    # Opening direction: adding a collider descendant outside the path
    # interior never closes an open path.
    if is_path_open(g, p, z):
        for c in colliders:
            for m in g.descendants([c]):
                if m not in interior and m not in (x, y):
                    assert is_path_open(g, p, z | {m})


# -- d-separation -----------------------------------------------------------


def test_classic_marginal_independence():
    assert d_separated(CLASSIC, ["A"], ["B"], [])


def test_conditioning_on_collider_connects():
    assert not d_separated(CLASSIC, ["A"], ["B"], ["Z"])


def test_conditioning_on_collider_descendant_connects():
    assert not d_separated(CLASSIC, ["A"], ["B"], ["D"])


def test_adjacent_vertices_never_separated():
    assert not d_separated(SMOKING, ["matches"], ["cancer"], ["smoking"])


def test_dsep_rejects_overlap():
    with pytest.raises(InvalidQuery):
        d_separated(CLASSIC, ["A"], ["A"], [])
    with pytest.raises(InvalidQuery):
        d_separated(CLASSIC, ["A"], ["B"], ["A"])


def test_dsep_rejects_empty_side():
    with pytest.raises(InvalidQuery):
        d_separated(CLASSIC, [], ["B"], [])


@given(dags(max_vertices=6, min_vertices=2), st.data())
def test_dsep_equals_path_enumeration(g, data):
    names = sorted(g.names)
    x = data.draw(st.frozensets(st.sampled_from(names), min_size=1))
    rest = [n for n in names if n not in x]
    if not rest:
        return
    y = data.draw(st.frozensets(st.sampled_from(rest), min_size=1))
    z = data.draw(subsets_of([n for n in rest if n not in y]))
    by_reachability = d_separated(g, x, y, z)
    by_paths = all(
        not is_path_open(g, p, z) for p in enumerate_paths(g, x, y)
    )
    assert by_reachability == by_paths


@given(dags(max_vertices=6, min_vertices=2), st.data())
def test_dsep_matches_brute_force(g, data):
    names = sorted(g.names)
    x = data.draw(st.sampled_from(names))
    y = data.draw(st.sampled_from([n for n in names if n != x]))
    z = data.draw(subsets_of([n for n in names if n not in (x, y)]))
    assert d_separated(g, [x], [y], z) == d_separated_brute_force(g, [x], [y], z)


# -- classification ---------------------------------------------------------


def test_classify_single_arrow_causal():
    assert classify_path(SMOKING, Path(("matches", "cancer"), (True,))) is PathClass.CAUSAL


def test_classify_fork_biasing():
    assert classify_path(SMOKING, FORK_PATH) is PathClass.BIASING


def test_classify_mediated_causal():
    assert classify_path(MEDIATION, Path(("X", "M", "Y"), (True, True))) is PathClass.CAUSAL


def test_classify_needs_role_endpoints():
    with pytest.raises(InvalidQuery):
        classify_path(TRIANGLE, Path(("X", "Y"), (True,)))


# -- highlighting -----------------------------------------------------------


def test_smoking_highlight_without_adjustment():
    h = highlight_edges(SMOKING)
    assert h.causal == {("matches", "cancer")}
    assert h.biasing == {("smoking", "matches"), ("smoking", "cancer")}


def test_smoking_highlight_with_confounder_adjusted():
    h = highlight_edges(SMOKING.set_status("smoking", S.ADJUSTED))
    assert h.causal == {("matches", "cancer")}
    assert h.biasing == frozenset()


def test_classic_highlight_sufficient_set_clears_biasing():
    g = CLASSIC.set_status("Z", S.ADJUSTED).set_status("A", S.ADJUSTED)
    assert highlight_edges(g).biasing == frozenset()


def test_classic_highlight_unadjusted():
    h = highlight_edges(CLASSIC)
    assert h.causal == {("E", "D")}
    assert h.biasing == {("A", "E"), ("A", "Z"), ("B", "D"), ("B", "Z"), ("Z", "D"), ("Z", "E")}


def test_highlight_requires_roles():
    with pytest.raises(MissingRoles):
        highlight_edges(TRIANGLE)


# -- atomic direct effects --------------------------------------------------


def test_triangle_atomic_edges():
    assert atomic_direct_effects(TRIANGLE) == {("X", "M"), ("M", "Y")}


def test_classic_atomic_edges():
    assert atomic_direct_effects(CLASSIC) == {("A", "Z"), ("B", "Z"), ("E", "D"), ("Z", "E")}


def test_single_edge_is_atomic():
    from dagscope import Dag

    assert atomic_direct_effects(Dag.of([], [("X", "Y")])) == {("X", "Y")}


@given(dags(max_vertices=6))
def test_atomic_edges_have_no_parallel_route(g):
    atomic = atomic_direct_effects(g)
    assert atomic <= set(g.edges)
    for u, v in g.edges:
        without = g.drop_edges([(u, v)])
        if (u, v) in atomic:
            assert v not in without.descendants([u])
        else:
            assert v in without.descendants([u])
