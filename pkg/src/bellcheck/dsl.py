"""Text format for context systems (`.obs` files).

Grammar, one directive per line:

    qubits N                          # register size, required, once
    set OBS, OBS, ... [= +1|-1]       # one context; sign defaults to +1

Each OBS is a whitespace-separated Pauli token list ("X1 Z2"), `#`
starts a comment, blank lines are ignored, and LF or CRLF both work.
Parsing builds the contexts verbatim; structural validation (commutation,
product signs) is deliberately left to the caller.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import Context, ContextSystem
from .pauli import PauliSyntaxError, format_pauli, parse_pauli


class DslSyntaxError(ValueError):
    """Parse failure with 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class RawSet:
    observables: tuple[tuple[str, int], ...]  # (token text, 1-based column)
    sign: int
    line: int


@dataclass(frozen=True)
class DslDocument:
    declared_qubits: int
    sets: tuple[RawSet, ...]


def _scan(text: str) -> DslDocument:
    declared: int | None = None
    declared_line = 0
    sets: list[RawSet] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        word, sep, rest = line.lstrip().partition(" ")
        if word == "qubits":
            if declared is not None:
                raise DslSyntaxError(
                    f"duplicate qubits declaration (first on line {declared_line})",
                    lineno,
                    indent + 1,
                )
            arg = rest.strip()
            if not arg.isdigit() or int(arg) < 1:
                raise DslSyntaxError(
                    f"qubits needs a positive integer, got {arg!r}", lineno, indent + 1
                )
            declared = int(arg)
            declared_line = lineno
        elif word == "set":
            if declared is None:
                raise DslSyntaxError("set before qubits declaration", lineno, indent + 1)
            body_col = indent + len(word) + len(sep) + 1  # 1-based column of body
            sets.append(_scan_set(rest, lineno, body_col))
        else:
            raise DslSyntaxError(f"unknown directive {word!r}", lineno, indent + 1)
    if declared is None:
        raise DslSyntaxError("missing qubits declaration", 1, 1)
    return DslDocument(declared, tuple(sets))


def _scan_set(body: str, lineno: int, body_col: int) -> RawSet:
    sign = +1
    eq = body.find("=")
    if eq >= 0:
        sign_text = body[eq + 1 :].strip()
        if sign_text == "+1":
            sign = +1
        elif sign_text == "-1":
            sign = -1
        else:
            raise DslSyntaxError(
                f"expected +1 or -1 after '=', got {sign_text!r}",
                lineno,
                body_col + eq + 1,
            )
        body = body[:eq]
    chunks: list[tuple[str, int]] = []
    start = 0
    for piece in body.split(","):
        if not piece.strip():
            raise DslSyntaxError("empty observable", lineno, body_col + start)
        chunks.append((piece, body_col + start))
        start += len(piece) + 1
    return RawSet(tuple(chunks), sign, lineno)


def parse_document(text: str) -> ContextSystem:
    """Parse `.obs` text into a ContextSystem (without validating it)."""
    doc = _scan(text)
    contexts = []
    for raw in doc.sets:
        ops = []
        for chunk, column in raw.observables:
            try:
                ops.append(parse_pauli(chunk, doc.declared_qubits))
            except PauliSyntaxError as err:
                raise DslSyntaxError(str(err), raw.line, column + err.position) from None
        contexts.append(Context(tuple(ops), raw.sign))
    return ContextSystem(doc.declared_qubits, tuple(contexts))


def serialize(system: ContextSystem) -> str:
    """Render a ContextSystem as `.obs` text; parse_document inverts it."""
    lines = [f"qubits {system.num_qubits}"]
    for ctx in system.contexts:
        body = ", ".join(format_pauli(o) for o in ctx.observables)
        sign = "+1" if ctx.expected_sign == +1 else "-1"
        lines.append(f"set {body} = {sign}")
    return "\n".join(lines) + "\n"
