"""Path enumeration, openness rules, and d-separation.

A path is a non-self-intersecting chain of edges traversed in either
direction.  Given a conditioning set Z, a path is closed when it has a
chain ``x -> m -> y`` or fork ``x <- m -> y`` with ``m`` in Z, or a
collider ``x -> c <- y`` such that neither ``c`` nor any descendant of
``c`` is in Z.  Paths with no interior vertex (single edges) are open.

:func:`d_separated` does not enumerate paths; it runs a reachability
search over (vertex, entering-direction) states, which stays linear in
the size of the graph.  The brute-force counterpart in
:mod:`dagscope.oracle` re-derives the same answers from enumerated paths
so the two routes can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import InvalidQuery, MissingRoles
from .graph import Dag


@dataclass(frozen=True)
class Path:
    """Vertex sequence plus one traversal direction per step.

    ``forwards[i]`` is True when the step from ``vertices[i]`` to
    ``vertices[i + 1]`` follows the arrow.
    """

    vertices: tuple[str, ...]
    forwards: tuple[bool, ...]

    def __post_init__(self):
        if len(self.vertices) < 2 or len(self.forwards) != len(self.vertices) - 1:
            raise InvalidQuery("a path needs at least one step and matching directions")

    def __str__(self) -> str:
        parts = [self.vertices[0]]
        for vertex, forward in zip(self.vertices[1:], self.forwards):
            parts.append("->" if forward else "<-")
            parts.append(vertex)
        return " ".join(parts)

    def edges(self) -> tuple[tuple[str, str], ...]:
        """The traversed edges in their stored (source, target) orientation."""
        out = []
        for i, forward in enumerate(self.forwards):
            a, b = self.vertices[i], self.vertices[i + 1]
            out.append((a, b) if forward else (b, a))
        return tuple(out)


class PathClass(Enum):
    CAUSAL = "causal"
    BIASING = "biasing"


def _check_query_sets(g: Dag, *sets: Iterable[str]) -> list[frozenset[str]]:
    checked = []
    for nodes in sets:
        fs = frozenset(nodes)
        for name in fs:
            g.variable(name)
        checked.append(fs)
    return checked


def _validate_path(g: Dag, p: Path) -> None:
    if len(set(p.vertices)) != len(p.vertices):
        raise InvalidQuery("path revisits a vertex")
    for (a, b), forward in zip(zip(p.vertices, p.vertices[1:]), p.forwards):
        edge = (a, b) if forward else (b, a)
        if not g.has_edge(*edge):
            raise InvalidQuery(f"no edge {edge[0]!r} -> {edge[1]!r} in the graph")


def enumerate_paths(
    g: Dag,
    sources: Iterable[str],
    targets: Iterable[str],
    max_length: int | None = None,
) -> list[Path]:
    """All simple paths from ``sources`` to ``targets``.

    Paths terminate on first arrival at a target and never pass through
    another source or target vertex; this matches what the separation
    rules need (an extension through an endpoint is open only if some
    first-arrival path is open too).  Results are sorted by vertex
    sequence, so the order is deterministic.  ``max_length`` bounds the
    number of edges.
    """
    src, dst = _check_query_sets(g, sources, targets)
    if not src or not dst:
        raise InvalidQuery("both endpoint sets must be non-empty")
    if src & dst:
        raise InvalidQuery("endpoint sets overlap")
    endpoint = src | dst
    results: list[Path] = []

    def neighbours(name: str):
        both = [(child, True) for child in g.children(name)]
        both += [(parent, False) for parent in g.parents(name)]
        return sorted(both)

    def walk(trail: list[str], dirs: list[bool], visited: set[str]):
        if max_length is not None and len(dirs) >= max_length:
            return
        for nxt, forward in neighbours(trail[-1]):
            if nxt in visited:
                continue
            if nxt in dst:
                results.append(Path(tuple(trail + [nxt]), tuple(dirs + [forward])))
            elif nxt not in endpoint:
                visited.add(nxt)
                walk(trail + [nxt], dirs + [forward], visited)
                visited.discard(nxt)

    for start in sorted(src):
        walk([start], [], {start})
    results.sort(key=lambda p: p.vertices)
    return results


def is_path_open(g: Dag, p: Path, conditioned: Iterable[str]) -> bool:
    """Apply the chain/fork/collider rules to one path."""
    (z,) = _check_query_sets(g, conditioned)
    _validate_path(g, p)
    for i in range(1, len(p.vertices) - 1):
        vertex = p.vertices[i]
        collider = p.forwards[i - 1] and not p.forwards[i]
        if collider:
            if not (g.descendants([vertex]) & z):
                return False
        elif vertex in z:
            return False
    return True


def d_separated(
    g: Dag, x: Iterable[str], y: Iterable[str], conditioned: Iterable[str] = ()
) -> bool:
    """True when every path between ``x`` and ``y`` is closed given ``z``.

    Reachability over (vertex, entered-along-arrow) states.  A state
    ``(v, True)`` means the trail reached ``v`` through an edge pointing
    at ``v``; continuation to children needs ``v`` outside Z (chain) and
    continuation to parents needs ``v`` in the ancestor closure of Z
    (collider).  A state ``(v, False)`` allows both fork and chain moves
    when ``v`` is outside Z.
    """
    xs, ys, z = _check_query_sets(g, x, y, conditioned)
    if not xs or not ys:
        raise InvalidQuery("both query sets must be non-empty")
    if xs & ys or xs & z or ys & z:
        raise InvalidQuery("query sets must be pairwise disjoint")
    opens_collider = g.ancestors(z) if z else frozenset()
    seen: set[tuple[str, bool]] = set()
    stack: list[tuple[str, bool]] = [(name, False) for name in xs]
    while stack:
        state = stack.pop()
        if state in seen:
            continue
        seen.add(state)
        vertex, entered_down = state
        if vertex in ys:
            return False
        moves: list[tuple[str, bool]] = []
        if entered_down:
            if vertex not in z:
                moves += [(c, True) for c in g.children(vertex)]
            if vertex in opens_collider:
                moves += [(p, False) for p in g.parents(vertex)]
        else:
            if vertex not in z:
                moves += [(c, True) for c in g.children(vertex)]
                moves += [(p, False) for p in g.parents(vertex)]
        stack.extend(m for m in moves if m not in seen)
    return True


def classify_path(g: Dag, p: Path) -> PathClass:
    """Causal when every step follows the arrows, biasing otherwise.

    The path must run from an exposure to an outcome.
    """
    _validate_path(g, p)
    from .graph import VariableStatus

    if g.variable(p.vertices[0]).status is not VariableStatus.EXPOSURE:
        raise InvalidQuery("path must start at an exposure")
    if g.variable(p.vertices[-1]).status is not VariableStatus.OUTCOME:
        raise InvalidQuery("path must end at an outcome")
    return PathClass.CAUSAL if all(p.forwards) else PathClass.BIASING


@dataclass(frozen=True)
class HighlightedEdges:
    causal: frozenset[tuple[str, str]]
    biasing: frozenset[tuple[str, str]]


def highlight_edges(g: Dag) -> HighlightedEdges:
    """Edges lying on open causal / open biasing exposure-outcome paths.

    The conditioning set is the graph's Adjusted variables.  Requires at
    least one exposure and one outcome.
    """
    if not g.exposures or not g.outcomes:
        raise MissingRoles("highlighting needs an exposure and an outcome")
    z = frozenset(g.adjusted)
    causal: set[tuple[str, str]] = set()
    biasing: set[tuple[str, str]] = set()
    for exposure in g.exposures:
        for outcome in g.outcomes:
            for path in enumerate_paths(g, [exposure], [outcome]):
                if not is_path_open(g, path, z):
                    continue
                bucket = causal if all(path.forwards) else biasing
                bucket.update(path.edges())
    return HighlightedEdges(frozenset(causal), frozenset(biasing))


def atomic_direct_effects(g: Dag) -> frozenset[tuple[str, str]]:
    """Edges ``u -> v`` with no other directed route from ``u`` to ``v``."""
    out = set()
    for u, v in g.edges:
        if v not in g.drop_edges([(u, v)]).descendants([u]):
            out.add((u, v))
    return frozenset(out)
