"""Testable conditional independence statements implied by a graph."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .errors import InvalidQuery, OperationCancelled
from .graph import Dag
from .paths import d_separated


@dataclass(frozen=True)
class IndependenceStatement:
    """``x`` independent of ``y`` given ``conditioned`` (x < y)."""

    x: str
    y: str
    conditioned: frozenset[str]

    def __str__(self) -> str:
        head = f"{self.x} _||_ {self.y}"
        if not self.conditioned:
            return head
        return head + " | " + ", ".join(sorted(self.conditioned))


def minimal_separators(
    g: Dag, x: str, y: str, allowed: Iterable[str]
) -> list[frozenset[str]]:
    """All inclusion-minimal subsets of ``allowed`` that d-separate x and y.

    Empty when x and y are adjacent (a single edge cannot be closed).
    Minimal separators only ever contain ancestors of the endpoints, so
    the scan is restricted to that closure.  Results sorted by size, then
    by sorted member names.
    """
    pool_all = frozenset(allowed)
    for name in pool_all | {x, y}:
        g.variable(name)
    if x == y or x in pool_all or y in pool_all:
        raise InvalidQuery("endpoints must be distinct and outside the allowed pool")
    if g.has_edge(x, y) or g.has_edge(y, x):
        return []
    pool = sorted(pool_all & g.ancestors([x, y]))
    separating: list[frozenset[str]] = []
    minimal: list[frozenset[str]] = []
    for size in range(len(pool) + 1):
        for subset in combinations(pool, size):
            z = frozenset(subset)
            if not d_separated(g, [x], [y], z):
                continue
            if not any(previous < z for previous in separating):
                minimal.append(z)
            separating.append(z)
    return sorted(minimal, key=lambda s: (len(s), sorted(s)))


def testable_implications(
    g: Dag, poll: Callable[[], bool] | None = None
) -> list[IndependenceStatement]:
    """One statement per minimal observed separator of each observed pair.

    Pairs joined by an edge are skipped.  Adjusted variables count as
    observed; Unobserved ones never appear in a statement.  Statements
    are ordered by the (x, y) pair, then by separator size.
    """
    observed = sorted(g.observed)
    out: list[IndependenceStatement] = []
    for x, y in combinations(observed, 2):
        if poll is not None and poll():
            raise OperationCancelled("implication listing cancelled")
        if g.has_edge(x, y) or g.has_edge(y, x):
            continue
        allowed = [name for name in observed if name not in (x, y)]
        for z in minimal_separators(g, x, y, allowed):
            out.append(IndependenceStatement(x, y, z))
    return out
