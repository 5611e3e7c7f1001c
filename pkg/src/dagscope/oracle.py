"""Brute-force reference implementations and a linear-Gaussian simulator.

Everything here re-derives its answers from first principles (simple
path enumeration, power-set scans) without touching the production
algorithms in :mod:`dagscope.paths` and :mod:`dagscope.identification`,
so the two routes stay independently checkable.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import InvalidQuery, MissingRoles, MultipleRoles, TooLarge
from .graph import Dag

_MAX_CANDIDATES = 12


# -- path machinery (deliberately separate from dagscope.paths) ----------


def _descendant_map(g: Dag) -> dict[str, frozenset[str]]:
    out = {}
    for name in g.names:
        seen = {name}
        stack = [name]
        while stack:
            for child in g.children(stack.pop()):
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        out[name] = frozenset(seen)
    return out


def _simple_paths(g: Dag, start: str, goal: str, blocked: frozenset[str]):
    """Yield (vertices, forwards) for simple paths avoiding ``blocked`` interiors."""
    found = []

    def walk(trail, dirs):
        here = trail[-1]
        steps = [(c, True) for c in g.children(here)] + [
            (p, False) for p in g.parents(here)
        ]
        for nxt, fwd in steps:
            if nxt in trail:
                continue
            if nxt == goal:
                found.append((trail + [nxt], dirs + [fwd]))
            elif nxt not in blocked:
                walk(trail + [nxt], dirs + [fwd])

    walk([start], [])
    return found


def _path_digest(g, desc, vertices, forwards):
    plain = set()
    colliders = []
    for i in range(1, len(vertices) - 1):
        if forwards[i - 1] and not forwards[i]:
            colliders.append(desc[vertices[i]])
        else:
            plain.add(vertices[i])
    return frozenset(plain), tuple(colliders)


def _digest_closed(digest, z: frozenset[str]) -> bool:
    plain, colliders = digest
    return bool(plain & z) or any(not (reach & z) for reach in colliders)


def d_separated_brute_force(
    g: Dag, x: Iterable[str], y: Iterable[str], conditioned: Iterable[str] = ()
) -> bool:
    """Enumerate every simple path between the sets and test each one."""
    xs, ys, z = frozenset(x), frozenset(y), frozenset(conditioned)
    for name in xs | ys | z:
        g.variable(name)
    if not xs or not ys:
        raise InvalidQuery("both query sets must be non-empty")
    if xs & ys or xs & z or ys & z:
        raise InvalidQuery("query sets must be pairwise disjoint")
    desc = _descendant_map(g)
    endpoints = xs | ys
    for start in sorted(xs):
        for goal in sorted(ys):
            for vertices, forwards in _simple_paths(g, start, goal, endpoints):
                if not _digest_closed(_path_digest(g, desc, vertices, forwards), z):
                    return False
    return True


# -- power-set scans ------------------------------------------------------


def _role_pair_profiles(g: Dag):
    desc = _descendant_map(g)
    profiles = []
    for e in g.exposures:
        for o in g.outcomes:
            digests = []
            for vertices, forwards in _simple_paths(g, e, o, frozenset((e, o))):
                causal = all(forwards)
                direct = len(vertices) == 2 and forwards[0]
                interiors = frozenset(vertices[1:-1])
                digests.append(
                    (causal, direct, interiors, _path_digest(g, desc, vertices, forwards))
                )
            profiles.append(digests)
    return profiles


def _brute_sufficient(profiles, z: frozenset[str], effect: str) -> bool:
    for digests in profiles:
        for causal, direct, interiors, digest in digests:
            if effect == "total":
                if causal:
                    if interiors & z:
                        return False
                elif not _digest_closed(digest, z):
                    return False
            else:
                if not direct and not _digest_closed(digest, z):
                    return False
    return True


def adjustment_sets_brute_force(g: Dag, effect: str = "total"):
    """Power-set scan for minimal sufficient sets.  Refuses > 12 candidates.

    Returns ``(sets, feasible)`` where ``sets`` is sorted by size then
    names and each set includes all Adjusted variables.
    """
    if effect not in ("total", "direct"):
        raise InvalidQuery(f"unknown effect kind {effect!r}")
    if not g.exposures or not g.outcomes:
        raise MissingRoles("adjustment needs an exposure and an outcome")
    roles = set(g.exposures) | set(g.outcomes)
    forced = frozenset(g.adjusted)
    pool = sorted(n for n in g.observed if n not in roles and n not in forced)
    if len(pool) > _MAX_CANDIDATES:
        raise TooLarge(f"{len(pool)} candidates exceed the brute-force bound")
    profiles = _role_pair_profiles(g)
    sufficient = []
    for size in range(len(pool) + 1):
        for extra in combinations(pool, size):
            z = forced | frozenset(extra)
            if _brute_sufficient(profiles, z, effect):
                sufficient.append(z)
    minimal = [s for s in sufficient if not any(t < s for t in sufficient)]
    return sorted(minimal, key=lambda s: (len(s), sorted(s))), bool(sufficient)


def instruments_brute_force(g: Dag):
    """Every (instrument, conditioning set) pair, by exhaustive scan."""
    if len(g.exposures) != 1 or len(g.outcomes) != 1:
        raise MultipleRoles("instrument search needs exactly one exposure and one outcome")
    x, y = g.exposures[0], g.outcomes[0]
    observed = list(g.observed)
    if len(observed) > _MAX_CANDIDATES + 3:
        raise TooLarge("too many observed variables for the exhaustive scan")
    desc_y = _descendant_map(g)[y]
    stripped = g.drop_edges([(x, y)])
    results = []
    for candidate in observed:
        if candidate in (x, y):
            continue
        pool = [n for n in observed if n not in (candidate, x, y) and n not in desc_y]
        for size in range(len(pool) + 1):
            for subset in combinations(pool, size):
                w = frozenset(subset)
                if d_separated_brute_force(g, [candidate], [x], w):
                    continue
                if d_separated_brute_force(stripped, [candidate], [y], w):
                    results.append((candidate, w))
    return results


# -- linear-Gaussian simulation -------------------------------------------


@dataclass(frozen=True)
class LinearSem:
    """Structural coefficients, one per edge, plus per-variable noise scales."""

    coefficients: dict[tuple[str, str], float]
    noise_scales: dict[str, float]
    seed: int = 0

    def __post_init__(self):
        for edge, beta in self.coefficients.items():
            if not 0.3 <= abs(beta) <= 0.9:
                raise ValueError(f"coefficient for {edge} outside [0.3, 0.9] magnitude")
        for name, scale in self.noise_scales.items():
            if not 0.5 <= scale <= 1.5:
                raise ValueError(f"noise scale for {name!r} outside [0.5, 1.5]")

    @classmethod
    def random(cls, g: Dag, seed: int = 0) -> "LinearSem":
        rng = np.random.default_rng(seed)
        coefficients = {}
        for edge in g.edges:
            sign = 1.0 if rng.random() < 0.5 else -1.0
            coefficients[edge] = sign * rng.uniform(0.3, 0.9)
        noise_scales = {name: rng.uniform(0.5, 1.5) for name in g.names}
        return cls(coefficients, noise_scales, seed)


@dataclass(frozen=True)
class Dataset:
    columns: tuple[str, ...]
    data: np.ndarray

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(self.columns)
            writer.writerows(self.data.tolist())


def _topological_order(g: Dag) -> list[str]:
    order = []
    pending = {name: len(g.parents(name)) for name in g.names}
    ready = [name for name in g.names if pending[name] == 0]
    while ready:
        name = ready.pop(0)
        order.append(name)
        for child in g.children(name):
            pending[child] -= 1
            if pending[child] == 0:
                ready.append(child)
    return order


def simulate(g: Dag, sem: LinearSem, n: int) -> Dataset:
    """Draw ``n`` joint samples; columns follow declaration order."""
    missing = set(g.edges) - set(sem.coefficients)
    if missing:
        raise ValueError(f"model lacks coefficients for {sorted(missing)}")
    rng = np.random.default_rng(sem.seed)
    values: dict[str, np.ndarray] = {}
    for name in _topological_order(g):
        noise = sem.noise_scales.get(name, 1.0) * rng.standard_normal(n)
        total = noise
        for parent in g.parents(name):
            total = total + sem.coefficients[(parent, name)] * values[parent]
        values[name] = total
    data = np.column_stack([values[name] for name in g.names])
    return Dataset(g.names, data)


def partial_correlation(
    dataset: Dataset, x: str, y: str, conditioned: Iterable[str] = ()
) -> float:
    """Sample partial correlation of x and y given the conditioning columns."""
    z = sorted(conditioned)
    names = [x, y] + z
    index = {c: i for i, c in enumerate(dataset.columns)}
    try:
        cols = [index[name] for name in names]
    except KeyError as err:
        raise InvalidQuery(f"no column {err.args[0]!r}") from None
    sub = np.cov(dataset.data[:, cols], rowvar=False)
    sub = np.atleast_2d(sub)
    precision = np.linalg.pinv(sub)
    return float(-precision[0, 1] / np.sqrt(precision[0, 0] * precision[1, 1]))
