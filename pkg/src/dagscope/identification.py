"""Adjustment sets and instrumental variables.

Sufficiency is the path criterion: a set estimates the *total* effect
when it closes every biasing exposure-outcome path while leaving every
causal path open, and the *direct* effect when it closes every path
except the single-edge exposure -> outcome arrows themselves.

The evaluation is split into cheap closure arithmetic plus reachability
queries where those are exact, with plain path enumeration as the
fallback, so the production route differs from the enumeration-only
oracle in :mod:`dagscope.oracle`:

* causal paths stay open iff the set avoids every causal interior
  vertex (vertices on a directed exposure-to-outcome route);
* when the set contains no descendant of the exposure ``e``, the
  biasing paths of the pair ``(e, o)`` are closed iff ``e`` and ``o``
  are d-separated in the graph with ``e``'s outgoing edges removed
  (forward-starting biasing paths need an activated collider below
  ``e``, which such a set cannot supply);
* otherwise the pair's paths are enumerated and classified directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Iterable

from .errors import (
    InvalidQuery,
    MissingRoles,
    MultipleRoles,
    OperationCancelled,
    OverlappingRoles,
)
from .graph import Dag
from .paths import d_separated, enumerate_paths, is_path_open


class EffectKind(Enum):
    TOTAL = "total"
    DIRECT = "direct"


@dataclass(frozen=True)
class AdjustmentReport:
    effect: EffectKind
    sets: tuple[frozenset[str], ...]
    feasible: bool


@dataclass(frozen=True)
class InstrumentResult:
    instrument: str
    conditioning_set: frozenset[str]


def _require_roles(g: Dag) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if not g.exposures or not g.outcomes:
        raise MissingRoles("the graph needs at least one exposure and one outcome")
    return g.exposures, g.outcomes


def _causal_interiors(g: Dag) -> frozenset[str]:
    out: set[str] = set()
    for e in g.exposures:
        below = g.descendants([e])
        for o in g.outcomes:
            above = g.ancestors([o])
            out |= (below & above) - {e, o}
    return frozenset(out)


def _pair_biasing_closed(g: Dag, e: str, o: str, z: frozenset[str]) -> bool:
    if not (z & (g.descendants([e]) - {e})):
        stripped = g.drop_edges((e, child) for child in g.children(e))
        return d_separated(stripped, [e], [o], z)
    for path in enumerate_paths(g, [e], [o]):
        if not all(path.forwards) and is_path_open(g, path, z):
            return False
    return True


def is_sufficient_adjustment(g: Dag, candidate: Iterable[str], effect: EffectKind) -> bool:
    """Decide sufficiency of ``candidate`` for the requested effect kind."""
    exposures, outcomes = _require_roles(g)
    z = frozenset(candidate)
    for name in z:
        g.variable(name)
    if z & (set(exposures) | set(outcomes)):
        raise OverlappingRoles("adjustment set intersects exposures or outcomes")
    if effect is EffectKind.TOTAL:
        if z & _causal_interiors(g):
            return False
        return all(
            _pair_biasing_closed(g, e, o, z) for e in exposures for o in outcomes
        )
    for e in exposures:
        for o in outcomes:
            trimmed = g.drop_edges([(e, o)])
            if not d_separated(trimmed, [e], [o], z):
                return False
    return True


class _PathProfile:
    """Pre-digested paths of one exposure-outcome pair for fast subset scans."""

    __slots__ = ("causal_interiors", "biasing", "non_direct")

    def __init__(self, g: Dag, e: str, o: str):
        self.causal_interiors: list[frozenset[str]] = []
        self.biasing: list[tuple[frozenset[str], tuple[frozenset[str], ...]]] = []
        self.non_direct: list[tuple[frozenset[str], tuple[frozenset[str], ...]]] = []
        for path in enumerate_paths(g, [e], [o]):
            interior = path.vertices[1:-1]
            plain: set[str] = set()
            colliders: list[frozenset[str]] = []
            for i, vertex in enumerate(interior, start=1):
                if path.forwards[i - 1] and not path.forwards[i]:
                    colliders.append(g.descendants([vertex]))
                else:
                    plain.add(vertex)
            digest = (frozenset(plain), tuple(colliders))
            causal = all(path.forwards)
            if causal:
                self.causal_interiors.append(frozenset(interior))
            else:
                self.biasing.append(digest)
            if not (len(path.vertices) == 2 and path.forwards[0]):
                self.non_direct.append(digest)

    @staticmethod
    def _closed(digest, z: frozenset[str]) -> bool:
        plain, colliders = digest
        if plain & z:
            return True
        return any(not (reach & z) for reach in colliders)

    def sufficient(self, z: frozenset[str], effect: EffectKind) -> bool:
        if effect is EffectKind.TOTAL:
            if any(interior & z for interior in self.causal_interiors):
                return False
            return all(self._closed(d, z) for d in self.biasing)
        return all(self._closed(d, z) for d in self.non_direct)


def list_minimal_adjustment_sets(
    g: Dag,
    effect: EffectKind = EffectKind.TOTAL,
    poll: Callable[[], bool] | None = None,
) -> AdjustmentReport:
    """Every minimal sufficient set honouring the variable statuses.

    Returned sets contain all Adjusted variables, no Unobserved variable,
    and are minimal relative to the Adjusted core: dropping any other
    member breaks sufficiency.  Candidates can be restricted to ancestors
    of exposures, outcomes, and Adjusted variables without loss (any
    closer outside that set would have to open an unactivated collider
    chain, which a minimal set never needs).  ``poll`` is checked between
    candidate subsets; returning True cancels the enumeration.
    """
    exposures, outcomes = _require_roles(g)
    roles = set(exposures) | set(outcomes)
    forced = frozenset(g.adjusted)
    relevant = g.ancestors(roles | forced)
    pool = sorted(
        name
        for name in g.observed
        if name in relevant and name not in roles and name not in forced
    )
    profiles = [_PathProfile(g, e, o) for e in exposures for o in outcomes]

    def sufficient(z: frozenset[str]) -> bool:
        return all(profile.sufficient(z, effect) for profile in profiles)

    found: list[frozenset[str]] = []
    minimal: list[frozenset[str]] = []
    for size in range(len(pool) + 1):
        for extra in combinations(pool, size):
            if poll is not None and poll():
                raise OperationCancelled("adjustment enumeration cancelled")
            candidate = forced | frozenset(extra)
            if not sufficient(candidate):
                continue
            if not any(previous < candidate for previous in found):
                minimal.append(candidate)
            found.append(candidate)
    ordered = tuple(sorted(minimal, key=lambda s: (len(s), sorted(s))))
    return AdjustmentReport(effect=effect, sets=ordered, feasible=bool(found))


def _single_roles(g: Dag) -> tuple[str, str]:
    if len(g.exposures) != 1 or len(g.outcomes) != 1:
        raise MultipleRoles("instrument search needs exactly one exposure and one outcome")
    return g.exposures[0], g.outcomes[0]


def is_instrument(g: Dag, candidate: str, conditioning: Iterable[str] = ()) -> bool:
    """Conditional instrument test for ``candidate`` given ``conditioning``.

    True iff the candidate is observed, the conditioning set consists of
    observed non-descendants of the outcome, the candidate is d-connected
    to the exposure given the set, and d-separated from the outcome given
    the set once the exposure -> outcome edge is removed.
    """
    x, y = _single_roles(g)
    w = frozenset(conditioning)
    for name in w | {candidate}:
        g.variable(name)
    if candidate in (x, y):
        raise InvalidQuery("candidate instrument cannot be the exposure or outcome")
    if w & {candidate, x, y}:
        raise InvalidQuery("conditioning set overlaps the candidate or the roles")
    unobserved = set(g.unobserved)
    if w & unobserved:
        raise InvalidQuery("conditioning on an unobserved variable")
    if candidate in unobserved:
        return False
    if w & g.descendants([y]):
        return False
    if d_separated(g, [candidate], [x], w):
        return False
    stripped = g.drop_edges([(x, y)])
    return d_separated(stripped, [candidate], [y], w)


def find_instruments(
    g: Dag, poll: Callable[[], bool] | None = None
) -> list[InstrumentResult]:
    """Instruments with ancestral conditioning sets.

    For each observed candidate the search scans subsets of the observed
    ancestors of the candidate and the outcome (minus descendants of the
    outcome) and reports the first valid set in (size, name) order.
    Restricting to ancestral sets keeps the search small and still finds
    an instrument whenever one exists at all.
    """
    x, y = _single_roles(g)
    results: list[InstrumentResult] = []
    observed = set(g.observed)
    forbidden = g.descendants([y])
    for candidate in g.names:
        if candidate in (x, y) or candidate not in observed:
            continue
        pool = sorted(
            (g.ancestors([candidate, y]) & observed) - forbidden - {candidate, x, y}
        )
        for size in range(len(pool) + 1):
            hit = None
            for subset in combinations(pool, size):
                if poll is not None and poll():
                    raise OperationCancelled("instrument search cancelled")
                if is_instrument(g, candidate, subset):
                    hit = frozenset(subset)
                    break
            if hit is not None:
                results.append(InstrumentResult(candidate, hit))
                break
    return results
