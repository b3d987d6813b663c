"""Text formats for matrices, instances and pairs.

Matrix text: a field descriptor line, a dimension line, then ``n`` rows of
whitespace-separated element literals. An instance file holds the
descriptor, ``n``, the ``n`` rows of ``A`` and the ``n`` rows of ``B``; a
pair file holds the rows of ``A1`` and ``A2``, optionally preceded by the
descriptor and ``n``. Blank lines separate blocks and are otherwise
ignored, as are lines starting with ``#``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact_matrix import Mat
from .field import Field, FieldError, make_field


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based (0 when not attributable)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            out.append((no, s))
    return out


def _parse_field(line: tuple[int, str]) -> Field:
    no, s = line
    try:
        return make_field(s)
    except FieldError as exc:
        raise ParseError(str(exc), no) from exc


def _parse_dim(line: tuple[int, str]) -> int:
    no, s = line
    try:
        n = int(s)
    except ValueError as exc:
        raise ParseError(f"expected a dimension, got {s!r}", no) from exc
    if n < 1:
        raise ParseError("dimension must be >= 1", no)
    return n


def _parse_rows(field: Field, n: int, lines: list[tuple[int, str]]) -> Mat:
    rows = []
    for no, s in lines:
        toks = s.split()
        if len(toks) != n:
            raise ParseError(f"expected {n} entries, got {len(toks)}", no)
        try:
            rows.append([field.parse_element(t) for t in toks])
        except FieldError as exc:
            raise ParseError(str(exc), no) from exc
    return Mat._raw(field, rows)


def _take(lines, start: int, count: int, what: str):
    chunk = lines[start:start + count]
    if len(chunk) < count:
        last = lines[-1][0] if lines else 0
        raise ParseError(f"unexpected end of input while reading {what}", last)
    return chunk


def format_rows(M: Mat) -> str:
    fmt = M.field.format_element
    return "\n".join(" ".join(fmt(v) for v in r) for r in M.rows)


def format_matrix(M: Mat) -> str:
    return f"{M.field.descriptor()}\n{M.n}\n{format_rows(M)}\n"


def parse_matrix(text: str) -> Mat:
    lines = _content_lines(text)
    if len(lines) < 2:
        raise ParseError("expected a field descriptor and a dimension", lines[-1][0] if lines else 0)
    field = _parse_field(lines[0])
    n = _parse_dim(lines[1])
    M = _parse_rows(field, n, _take(lines, 2, n, "matrix rows"))
    if len(lines) > 2 + n:
        raise ParseError("trailing content after matrix", lines[2 + n][0])
    return M


@dataclass(frozen=True)
class Instance:
    A: Mat
    B: Mat

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def n(self) -> int:
        return self.A.n


def format_instance(A: Mat, B: Mat) -> str:
    return f"{A.field.descriptor()}\n\n{A.n}\n\n{format_rows(A)}\n\n{format_rows(B)}\n"


def parse_instance(text: str) -> Instance:
    lines = _content_lines(text)
    if len(lines) < 2:
        raise ParseError("expected a field descriptor and a dimension", lines[-1][0] if lines else 0)
    field = _parse_field(lines[0])
    n = _parse_dim(lines[1])
    A = _parse_rows(field, n, _take(lines, 2, n, "matrix A"))
    B = _parse_rows(field, n, _take(lines, 2 + n, n, "matrix B"))
    if len(lines) > 2 + 2 * n:
        raise ParseError("trailing content after matrix B", lines[2 + 2 * n][0])
    if B.is_zero():
        raise ParseError("the normal matrix B must be nonzero", lines[2 + n][0])
    return Instance(A, B)


def format_pair(A1: Mat, A2: Mat) -> str:
    return (f"{A1.field.descriptor()}\n\n{A1.n}\n\n"
            f"{format_rows(A1)}\n\n{format_rows(A2)}\n")


def parse_pair(text: str, field: Field | None = None, n: int | None = None) -> tuple[Mat, Mat]:
    """Parse a pair file; a header is required unless ``field`` and ``n`` are given."""
    lines = _content_lines(text)
    start = 0
    if field is None or n is None or len(lines) != 2 * n:
        if len(lines) < 2:
            raise ParseError("expected a field descriptor and a dimension", lines[-1][0] if lines else 0)
        f2 = _parse_field(lines[0])
        n2 = _parse_dim(lines[1])
        if field is not None and (f2 != field or n2 != n):
            raise ParseError("pair does not match the instance's field or dimension", lines[0][0])
        field, n, start = f2, n2, 2
    A1 = _parse_rows(field, n, _take(lines, start, n, "first matrix"))
    A2 = _parse_rows(field, n, _take(lines, start + n, n, "second matrix"))
    if len(lines) > start + 2 * n:
        raise ParseError("trailing content after the pair", lines[start + 2 * n][0])
    return A1, A2
