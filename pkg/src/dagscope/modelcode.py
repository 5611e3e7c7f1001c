"""Plain-text model code: parsing, serialization, and name encoding.

A document has two blocks separated by the first blank line.  The first
block declares one variable per line::

    <encoded-name> <status-code> [@<x>,<y>]

with status codes ``1`` (other), ``A`` (adjusted), ``U`` (unobserved),
``E`` (exposure), ``O`` (outcome).  The second block lists edges, one
source per line followed by its targets::

    <encoded-name> <target-1> ... <target-k>

Names are percent-encoded so that tokens never contain whitespace: every
byte of the UTF-8 form outside ``[A-Za-z0-9_.-]`` becomes ``%XX``.  Both
``\\n`` and ``\\r\\n`` are accepted on input; output always uses ``\\n``.
Serialization follows declaration order, which makes it canonical:
``parse(serialize(g)) == g`` and re-serializing is byte-stable.
"""

from __future__ import annotations

import string

from .errors import ModelSyntaxError, NameCollision, UndeclaredVariable
from .graph import Dag, Variable, VariableStatus

STATUS_BY_CODE = {
    "1": VariableStatus.OTHER,
    "A": VariableStatus.ADJUSTED,
    "U": VariableStatus.UNOBSERVED,
    "E": VariableStatus.EXPOSURE,
    "O": VariableStatus.OUTCOME,
}
CODE_BY_STATUS = {status: code for code, status in STATUS_BY_CODE.items()}

_SAFE_CHARS = frozenset(string.ascii_letters + string.digits + "_.-")
_HEX = set(string.hexdigits)


def encode_name(name: str) -> str:
    """Percent-encode every UTF-8 byte outside the safe set."""
    parts = []
    for byte in name.encode("utf-8"):
        char = chr(byte)
        parts.append(char if char in _SAFE_CHARS else "%{:02X}".format(byte))
    return "".join(parts)


def decode_name(token: str) -> str:
    """Inverse of :func:`encode_name`; rejects malformed escapes."""
    buf = bytearray()
    i = 0
    while i < len(token):
        char = token[i]
        if char == "%":
            digits = token[i + 1 : i + 3]
            if len(digits) != 2 or not all(d in _HEX for d in digits):
                raise ModelSyntaxError(f"invalid percent escape in {token!r}")
            buf.append(int(digits, 16))
            i += 3
        else:
            buf.extend(char.encode("utf-8"))
            i += 1
    try:
        return buf.decode("utf-8")
    except UnicodeDecodeError:
        raise ModelSyntaxError(f"encoded name {token!r} is not valid UTF-8") from None


def _parse_coordinate(token: str, line: int) -> tuple[float, float]:
    body = token[1:]
    parts = body.split(",")
    if len(parts) != 2:
        raise ModelSyntaxError(f"malformed coordinate {token!r}", line)
    values = []
    for part in parts:
        try:
            value = float(part)
        except ValueError:
            raise ModelSyntaxError(f"malformed coordinate {token!r}", line) from None
        if value != value or value in (float("inf"), float("-inf")):
            raise ModelSyntaxError(f"coordinate must be finite in {token!r}", line)
        values.append(value)
    return (values[0], values[1])


def parse(text: str) -> Dag:
    """Parse model code into a :class:`Dag`.

    Raises :class:`ModelSyntaxError`, :class:`UndeclaredVariable`, or
    :class:`NameCollision` with a line number, and :class:`CycleError`
    when the edge list is cyclic.
    """
    variables: list[Variable] = []
    declared: set[str] = set()
    edges: list[tuple[str, str]] = []
    edge_seen: set[tuple[str, str]] = set()
    in_edges = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if variables and not in_edges:
                in_edges = True
            continue
        tokens = line.split()
        if not in_edges:
            if len(tokens) < 2:
                raise ModelSyntaxError("variable line needs a status code", lineno)
            try:
                name = decode_name(tokens[0])
            except ModelSyntaxError as err:
                raise ModelSyntaxError(str(err), lineno) from None
            code = tokens[1]
            if code not in STATUS_BY_CODE:
                raise ModelSyntaxError(f"unknown status code {code!r}", lineno)
            layout = None
            if len(tokens) == 3:
                if not tokens[2].startswith("@"):
                    raise ModelSyntaxError(f"unexpected token {tokens[2]!r}", lineno)
                layout = _parse_coordinate(tokens[2], lineno)
            elif len(tokens) > 3:
                raise ModelSyntaxError(f"unexpected token {tokens[3]!r}", lineno)
            if name in declared:
                raise NameCollision(name, lineno)
            declared.add(name)
            variables.append(Variable(name, STATUS_BY_CODE[code], layout))
        else:
            if len(tokens) < 2:
                raise ModelSyntaxError("edge line needs at least one target", lineno)
            try:
                decoded = [decode_name(tok) for tok in tokens]
            except ModelSyntaxError as err:
                raise ModelSyntaxError(str(err), lineno) from None
            source = decoded[0]
            if source not in declared:
                raise UndeclaredVariable(source, lineno)
            for target in decoded[1:]:
                if target not in declared:
                    raise UndeclaredVariable(target, lineno)
                if (source, target) in edge_seen:
                    continue
                edge_seen.add((source, target))
                edges.append((source, target))
    # Dag construction enforces acyclicity, self-loop and two-cycle bans.
    return Dag(tuple(variables), tuple(edges))


def _format_number(value: float) -> str:
    # repr() is the shortest exact decimal form; trim integral ".0".
    text = repr(float(value))
    return text[:-2] if text.endswith(".0") else text


def serialize(g: Dag) -> str:
    """Canonical model code for ``g`` (declaration order, ``\\n`` endings)."""
    lines = []
    for var in g.variables:
        parts = [encode_name(var.name), CODE_BY_STATUS[var.status]]
        if var.layout is not None:
            x, y = var.layout
            parts.append("@{},{}".format(_format_number(x), _format_number(y)))
        lines.append(" ".join(parts))
    lines.append("")
    for var in g.variables:
        targets = g.children(var.name)
        if targets:
            lines.append(
                " ".join([encode_name(var.name)] + [encode_name(t) for t in targets])
            )
    return "\n".join(lines) + "\n"


def load(path) -> Dag:
    """Read a ``.dag`` file (UTF-8)."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def dump(g: Dag, path) -> None:
    """Write canonical model code to ``path`` (UTF-8)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(serialize(g))
