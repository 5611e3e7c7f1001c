"""Immutable directed acyclic graph with variable roles and optional layout.

The :class:`Dag` is a value type: every editing operation returns a new
graph and never mutates the receiver.  Variable declaration order and edge
declaration order are preserved because they define the canonical text
serialization (see :mod:`dagscope.modelcode`).  Equality and hashing ignore
order: two graphs are equal when they hold the same variables (including
status and layout) and the same edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable

from .errors import CycleError, NameCollision, SelfLoopError, UnknownVariable


class VariableStatus(Enum):
    """Role of a variable.  Statuses are mutually exclusive."""

    EXPOSURE = "exposure"
    OUTCOME = "outcome"
    ADJUSTED = "adjusted"
    UNOBSERVED = "unobserved"
    OTHER = "other"


@dataclass(frozen=True)
class Variable:
    """A named vertex with a role and an optional canvas position."""

    name: str
    status: VariableStatus = VariableStatus.OTHER
    layout: tuple[float, float] | None = None


def _as_variable(spec) -> Variable:
    if isinstance(spec, Variable):
        return spec
    if isinstance(spec, str):
        return Variable(spec)
    name, status, *rest = spec
    layout = rest[0] if rest else None
    return Variable(name, status, layout)


@dataclass(frozen=True, eq=False)
class Dag:
    """Acyclic digraph over named variables.

    Construction validates every invariant: unique non-empty names, finite
    layout coordinates, edges between declared variables, no self-loops, no
    duplicate edges, at most one of (u, v) / (v, u), and acyclicity.
    """

    variables: tuple[Variable, ...] = ()
    edges: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "edges", tuple((u, v) for u, v in self.edges))
        seen: set[str] = set()
        for var in self.variables:
            if not isinstance(var.name, str) or not var.name:
                raise ValueError("variable names must be non-empty strings")
            if var.name in seen:
                raise NameCollision(var.name)
            seen.add(var.name)
            if var.layout is not None:
                x, y = var.layout
                if not (math.isfinite(x) and math.isfinite(y)):
                    raise ValueError(f"layout of {var.name!r} must be finite")
        edge_set: set[tuple[str, str]] = set()
        for u, v in self.edges:
            if u not in seen:
                raise UnknownVariable(u)
            if v not in seen:
                raise UnknownVariable(v)
            if u == v:
                raise SelfLoopError(u)
            if (u, v) in edge_set:
                raise ValueError(f"duplicate edge {u!r} -> {v!r}")
            if (v, u) in edge_set:
                raise CycleError(f"both {u!r} -> {v!r} and the reverse edge given")
            edge_set.add((u, v))
        self._assert_acyclic()

    def _assert_acyclic(self):
        # Kahn's algorithm; leftovers indicate a directed cycle.
        indeg = {v.name: 0 for v in self.variables}
        for _, v in self.edges:
            indeg[v] += 1
        queue = [n for n, d in indeg.items() if d == 0]
        visited = 0
        while queue:
            n = queue.pop()
            visited += 1
            for child in self.children(n):
                indeg[child] -= 1
                if indeg[child] == 0:
                    queue.append(child)
        if visited != len(self.variables):
            raise CycleError("the edge set contains a directed cycle")

    # -- lookups ---------------------------------------------------------

    @cached_property
    def _by_name(self) -> dict[str, Variable]:
        return {v.name: v for v in self.variables}

    @cached_property
    def _children(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v.name: [] for v in self.variables}
        for u, v in self.edges:
            out[u].append(v)
        return {k: tuple(vs) for k, vs in out.items()}

    @cached_property
    def _parents(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v.name: [] for v in self.variables}
        for u, v in self.edges:
            out[v].append(u)
        return {k: tuple(vs) for k, vs in out.items()}

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __len__(self) -> int:
        return len(self.variables)

    def variable(self, name: str) -> Variable:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownVariable(name) from None

    def has_edge(self, source: str, target: str) -> bool:
        return (source, target) in set(self.edges)

    def parents(self, name: str) -> tuple[str, ...]:
        self.variable(name)
        return self._parents[name]

    def children(self, name: str) -> tuple[str, ...]:
        self.variable(name)
        return self._children[name]

    def with_status(self, status: VariableStatus) -> tuple[str, ...]:
        """Names holding ``status``, in declaration order."""
        return tuple(v.name for v in self.variables if v.status is status)

    @property
    def exposures(self) -> tuple[str, ...]:
        return self.with_status(VariableStatus.EXPOSURE)

    @property
    def outcomes(self) -> tuple[str, ...]:
        return self.with_status(VariableStatus.OUTCOME)

    @property
    def adjusted(self) -> tuple[str, ...]:
        return self.with_status(VariableStatus.ADJUSTED)

    @property
    def unobserved(self) -> tuple[str, ...]:
        return self.with_status(VariableStatus.UNOBSERVED)

    @property
    def observed(self) -> tuple[str, ...]:
        return tuple(
            v.name for v in self.variables if v.status is not VariableStatus.UNOBSERVED
        )

    # -- closures --------------------------------------------------------

    def ancestors(self, seed: Iterable[str]) -> frozenset[str]:
        """Reflexive transitive closure along reversed edges."""
        return self._closure(seed, self._parents)

    def descendants(self, seed: Iterable[str]) -> frozenset[str]:
        """Reflexive transitive closure along edges."""
        return self._closure(seed, self._children)

    def _closure(self, seed: Iterable[str], step: dict[str, tuple[str, ...]]) -> frozenset[str]:
        out: set[str] = set()
        stack = []
        for name in seed:
            self.variable(name)
            out.add(name)
            stack.append(name)
        while stack:
            for nxt in step[stack.pop()]:
                if nxt not in out:
                    out.add(nxt)
                    stack.append(nxt)
        return frozenset(out)

    # -- editing (value semantics) ---------------------------------------

    def add_variable(
        self,
        name: str,
        status: VariableStatus = VariableStatus.OTHER,
        layout: tuple[float, float] | None = None,
    ) -> "Dag":
        if name in self._by_name:
            raise NameCollision(name)
        return Dag(self.variables + (Variable(name, status, layout),), self.edges)

    def remove_variable(self, name: str) -> "Dag":
        """Drop a variable and every edge incident to it."""
        self.variable(name)
        keep = tuple(v for v in self.variables if v.name != name)
        edges = tuple(e for e in self.edges if name not in e)
        return Dag(keep, edges)

    def toggle_edge(self, source: str, target: str) -> "Dag":
        """Add, remove, or reverse-replace the edge ``source -> target``.

        If the edge exists it is removed.  Otherwise, an existing reverse
        edge ``target -> source`` is replaced by ``source -> target``.  The
        graph is returned unchanged in no case: a cycle-creating addition
        raises :class:`CycleError` and leaves the receiver intact.
        """
        self.variable(source)
        self.variable(target)
        if source == target:
            raise SelfLoopError(source)
        if self.has_edge(source, target):
            return Dag(self.variables, tuple(e for e in self.edges if e != (source, target)))
        rest = tuple(e for e in self.edges if e != (target, source))
        # Reachability target -> source over the remaining edges means the
        # new edge would close a cycle.
        probe = Dag(self.variables, rest)
        if source in probe.descendants([target]):
            raise CycleError(f"edge {source!r} -> {target!r} would create a cycle")
        return Dag(self.variables, rest + ((source, target),))

    def remove_edge(self, source: str, target: str) -> "Dag":
        if not self.has_edge(source, target):
            raise UnknownVariable(f"{source} -> {target}")
        return Dag(self.variables, tuple(e for e in self.edges if e != (source, target)))

    def drop_edges(self, drop: Iterable[tuple[str, str]]) -> "Dag":
        """Graph without the listed edges; missing ones are ignored."""
        dropped = set(drop)
        return Dag(self.variables, tuple(e for e in self.edges if e not in dropped))

    def set_status(self, name: str, status: VariableStatus) -> "Dag":
        """Assign a role.

        Exposure, Outcome, and Other always set.  Adjusted and Unobserved
        toggle: re-applying the current status returns the variable to
        Other.  Any assignment clears the previous status (they are
        mutually exclusive).
        """
        current = self.variable(name)
        toggled = (VariableStatus.ADJUSTED, VariableStatus.UNOBSERVED)
        new = status
        if status in toggled and current.status is status:
            new = VariableStatus.OTHER
        replaced = tuple(
            Variable(v.name, new, v.layout) if v.name == name else v for v in self.variables
        )
        return Dag(replaced, self.edges)

    def set_layout(self, name: str, layout: tuple[float, float] | None) -> "Dag":
        self.variable(name)
        replaced = tuple(
            Variable(v.name, v.status, layout) if v.name == name else v for v in self.variables
        )
        return Dag(replaced, self.edges)

    def rename_variable(self, old: str, new: str) -> "Dag":
        var = self.variable(old)
        if new == old:
            return self
        if new in self._by_name:
            raise NameCollision(new)
        if not new:
            raise ValueError("variable names must be non-empty strings")
        replaced = tuple(
            Variable(new, v.status, v.layout) if v.name == old else v for v in self.variables
        )
        edges = tuple(
            (new if u == old else u, new if v == old else v) for u, v in self.edges
        )
        del var
        return Dag(replaced, edges)

    def induced(self, keep: Iterable[str]) -> "Dag":
        """Induced subgraph on ``keep``, preserving declaration order."""
        kept = set(keep)
        for name in kept:
            self.variable(name)
        variables = tuple(v for v in self.variables if v.name in kept)
        edges = tuple((u, v) for u, v in self.edges if u in kept and v in kept)
        return Dag(variables, edges)

    # -- value equality ----------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return frozenset(self.variables) == frozenset(other.variables) and frozenset(
            self.edges
        ) == frozenset(other.edges)

    def __hash__(self) -> int:
        return hash((frozenset(self.variables), frozenset(self.edges)))

    def __repr__(self) -> str:
        return f"Dag({len(self.variables)} variables, {len(self.edges)} edges)"

    @classmethod
    def of(cls, variables: Iterable = (), edges: Iterable[tuple[str, str]] = ()) -> "Dag":
        """Convenience constructor.

        ``variables`` items may be plain names, ``(name, status)`` or
        ``(name, status, layout)`` tuples, or :class:`Variable` instances.
        Edge endpoints not declared explicitly are appended as Other
        variables in order of first appearance.
        """
        declared = [_as_variable(spec) for spec in variables]
        names = {v.name for v in declared}
        edge_list = [tuple(e) for e in edges]
        for u, v in edge_list:
            for name in (u, v):
                if name not in names:
                    declared.append(Variable(name))
                    names.add(name)
        return cls(tuple(declared), tuple(edge_list))
