"""Causal diagram toolkit.

Parse and edit acyclic causal diagrams, test d-separation, enumerate
minimal adjustment sets and instrumental variables, list testable
implications, and simulate linear-Gaussian data for validation.
"""

from .errors import (
    CycleError,
    DagError,
    InvalidQuery,
    MissingRoles,
    ModelSyntaxError,
    MultipleRoles,
    NameCollision,
    OperationCancelled,
    OverlappingRoles,
    SelfLoopError,
    TooLarge,
    UndeclaredVariable,
    UnknownVariable,
)
from .graph import Dag, Variable, VariableStatus
from .identification import (
    AdjustmentReport,
    EffectKind,
    InstrumentResult,
    find_instruments,
    is_instrument,
    is_sufficient_adjustment,
    list_minimal_adjustment_sets,
)
from .implications import IndependenceStatement, minimal_separators, testable_implications
from .modelcode import decode_name, encode_name, parse, serialize
from .paths import (
    HighlightedEdges,
    Path,
    PathClass,
    atomic_direct_effects,
    classify_path,
    d_separated,
    enumerate_paths,
    highlight_edges,
    is_path_open,
)
from .transforms import (
    RelevanceTag,
    UndirectedGraph,
    correlation_graph,
    moral_adjustment_check,
    moral_graph,
    relevance_coloring,
    relevant_subgraph,
)

__version__ = "0.1.0"

__all__ = [
    "AdjustmentReport",
    "CycleError",
    "Dag",
    "DagError",
    "EffectKind",
    "HighlightedEdges",
    "IndependenceStatement",
    "InstrumentResult",
    "InvalidQuery",
    "MissingRoles",
    "ModelSyntaxError",
    "MultipleRoles",
    "NameCollision",
    "OperationCancelled",
    "OverlappingRoles",
    "Path",
    "PathClass",
    "RelevanceTag",
    "SelfLoopError",
    "TooLarge",
    "UndeclaredVariable",
    "UndirectedGraph",
    "UnknownVariable",
    "Variable",
    "VariableStatus",
    "atomic_direct_effects",
    "classify_path",
    "correlation_graph",
    "d_separated",
    "decode_name",
    "encode_name",
    "enumerate_paths",
    "find_instruments",
    "highlight_edges",
    "is_instrument",
    "is_path_open",
    "is_sufficient_adjustment",
    "list_minimal_adjustment_sets",
    "minimal_separators",
    "moral_adjustment_check",
    "moral_graph",
    "parse",
    "relevance_coloring",
    "relevant_subgraph",
    "serialize",
    "testable_implications",
]
