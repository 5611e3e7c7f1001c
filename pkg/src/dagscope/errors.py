"""Exception types shared across the toolkit.

Parser errors carry a ``line`` attribute (1-based) when the offending
location is a single line of model code; it is ``None`` otherwise.
"""

from __future__ import annotations


class DagError(Exception):
    """Base class for every error raised by this package."""


class NameCollision(DagError):
    """A variable name is already taken."""

    def __init__(self, name: str, line: int | None = None):
        self.name = name
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"variable {name!r} is already declared{where}")


class UnknownVariable(DagError):
    """A referenced variable does not exist in the graph."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown variable {name!r}")


class SelfLoopError(DagError):
    """An edge from a variable to itself was requested."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"self-loop on {name!r} is not allowed")


class CycleError(DagError):
    """An operation would introduce a directed cycle."""


class ModelSyntaxError(DagError):
    """Model code text that does not match the grammar."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


class UndeclaredVariable(DagError):
    """An adjacency line references a variable missing from the block above."""

    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        super().__init__(f"line {line}: edge references undeclared variable {name!r}")


class InvalidQuery(DagError):
    """A query violates its preconditions (overlap, empty side, bad path)."""


class MissingRoles(DagError):
    """The graph lacks an exposure or an outcome required by the operation."""


class OverlappingRoles(DagError):
    """A candidate adjustment set intersects the exposures or outcomes."""


class MultipleRoles(DagError):
    """The operation requires exactly one exposure and one outcome."""


class TooLarge(DagError):
    """Brute-force enumeration refused: the search space is too big."""


class OperationCancelled(DagError):
    """A long-running enumeration was cancelled cooperatively."""
