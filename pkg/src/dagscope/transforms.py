"""Derived graphs: correlation graph, moral graph, relevance reduction."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable

from .errors import MissingRoles, OverlappingRoles
from .graph import Dag
from .paths import d_separated


@dataclass(frozen=True, eq=False)
class UndirectedGraph:
    """Vertices in declaration order plus a set of unordered lines."""

    vertices: tuple[str, ...]
    lines: frozenset[frozenset[str]]

    def __post_init__(self):
        names = set(self.vertices)
        for line in self.lines:
            if len(line) != 2 or not line <= names:
                raise ValueError(f"bad line {sorted(line)!r}")

    def has_line(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self.lines

    def neighbours(self, name: str) -> frozenset[str]:
        return frozenset(other for line in self.lines if name in line for other in line - {name})

    def sorted_lines(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted(line)) for line in self.lines)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UndirectedGraph):
            return NotImplemented
        return frozenset(self.vertices) == frozenset(other.vertices) and self.lines == other.lines

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), self.lines))


def correlation_graph(g: Dag) -> UndirectedGraph:
    """Line between every pair that is d-connected given the empty set."""
    lines = {
        frozenset((a, b))
        for a, b in combinations(g.names, 2)
        if not d_separated(g, [a], [b], ())
    }
    return UndirectedGraph(g.names, frozenset(lines))


def _relevant_names(g: Dag) -> frozenset[str]:
    seeds = set(g.exposures) | set(g.outcomes) | set(g.adjusted)
    return g.ancestors(seeds)


def relevant_subgraph(g: Dag) -> Dag:
    """Induced subgraph on ancestors of exposures, outcomes, and adjusted.

    Idempotent; requires at least one exposure and one outcome.
    """
    if not g.exposures or not g.outcomes:
        raise MissingRoles("reduction needs an exposure and an outcome")
    return g.induced(_relevant_names(g))


def moral_graph(g: Dag, restrict_to_relevant: bool = False) -> UndirectedGraph:
    """Undirected skeleton plus a line between co-parents of each vertex.

    With ``restrict_to_relevant`` the graph is first reduced to the
    ancestors of exposures, outcomes, and adjusted variables.
    """
    base = relevant_subgraph(g) if restrict_to_relevant else g
    return _moralize(base)


def _moralize(g: Dag) -> UndirectedGraph:
    lines = {frozenset(edge) for edge in g.edges}
    for name in g.names:
        for a, b in combinations(sorted(g.parents(name)), 2):
            lines.add(frozenset((a, b)))
    return UndirectedGraph(g.names, frozenset(lines))


class RelevanceTag(Enum):
    EXPOSURE_OR_OUTCOME = "exposure-or-outcome"
    ANCESTOR_OF_EXPOSURE = "ancestor-of-exposure"
    ANCESTOR_OF_OUTCOME = "ancestor-of-outcome"
    ANCESTOR_OF_BOTH = "ancestor-of-both"
    IRRELEVANT = "irrelevant"


def relevance_coloring(g: Dag) -> dict[str, RelevanceTag]:
    """Tag every vertex by its ancestry relative to exposures and outcomes."""
    if not g.exposures or not g.outcomes:
        raise MissingRoles("coloring needs an exposure and an outcome")
    of_exposure = g.ancestors(g.exposures)
    of_outcome = g.ancestors(g.outcomes)
    roles = set(g.exposures) | set(g.outcomes)
    out: dict[str, RelevanceTag] = {}
    for name in g.names:
        if name in roles:
            out[name] = RelevanceTag.EXPOSURE_OR_OUTCOME
        elif name in of_exposure and name in of_outcome:
            out[name] = RelevanceTag.ANCESTOR_OF_BOTH
        elif name in of_exposure:
            out[name] = RelevanceTag.ANCESTOR_OF_EXPOSURE
        elif name in of_outcome:
            out[name] = RelevanceTag.ANCESTOR_OF_OUTCOME
        else:
            out[name] = RelevanceTag.IRRELEVANT
    return out


def _connected_avoiding(u: UndirectedGraph, sources: set[str], targets: set[str], removed: set[str]) -> bool:
    stack = [s for s in sources if s not in removed]
    seen = set(stack)
    while stack:
        vertex = stack.pop()
        if vertex in targets:
            return True
        for nxt in u.neighbours(vertex):
            if nxt not in removed and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return False


def moral_adjustment_check(g: Dag, candidate: Iterable[str]) -> bool:
    """Total-effect sufficiency via moral-graph separation.

    Classic by-hand verification: a candidate set must contain no
    descendant of an exposure; then, for each exposure-outcome pair, the
    exposure's outgoing edges are removed, the graph is restricted to
    ancestors of the pair and the candidate set, moralized, and the pair
    must be disconnected once the candidate vertices are deleted.

    For candidate sets free of exposure descendants this agrees exactly
    with the path-based criterion in :mod:`dagscope.identification`; the
    two notions diverge only for sets that touch descendants of an
    exposure, which this procedure rejects outright.
    """
    z = frozenset(candidate)
    for name in z:
        g.variable(name)
    if not g.exposures or not g.outcomes:
        raise MissingRoles("adjustment check needs an exposure and an outcome")
    roles = set(g.exposures) | set(g.outcomes)
    if z & roles:
        raise OverlappingRoles("candidate set intersects exposures or outcomes")
    if z & g.descendants(g.exposures):
        return False
    for exposure in g.exposures:
        for outcome in g.outcomes:
            backdoor = g.drop_edges((exposure, c) for c in g.children(exposure))
            scope = backdoor.ancestors({exposure, outcome} | z)
            moral = _moralize(backdoor.induced(scope))
            if _connected_avoiding(moral, {exposure}, {outcome}, set(z)):
                return False
    return True
