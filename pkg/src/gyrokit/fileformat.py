"""Text formats: ``gyro 1`` tables, gyration listings and set lists.

A table document looks like::

    gyro 1
    2
    0 1
    1 0
    labels e a

Lines starting with ``#`` and blank lines are ignored.  The ``labels`` line
is optional.  Gyration listings have one line ``a b: i0 i1 ... i(n-1)`` per
ordered pair; set lists have one ``{a,b,c}`` per line with an optional
trailing ``*``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CayleyTable, FiniteGyrogroup, Permutation
from .errors import BadDimensions, BadMagic, EntryOutOfRange, NonIntegerEntry, ParseError
from .subalgebra import ElementSubset

MAGIC = "gyro"
VERSION = "1"


@dataclass(frozen=True)
class TableDocument:
    table: CayleyTable
    labels: tuple[str, ...] | None = None


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _int(token: str, line: int, column: int) -> int:
    try:
        value = int(token, 10)
    except ValueError:
        raise NonIntegerEntry(f"{token!r} is not an integer", line, column) from None
    if value < 0:
        raise NonIntegerEntry(f"{token!r} is negative", line, column)
    return value


def parse_document(text: str) -> TableDocument:
    lines = list(_content_lines(text))
    if not lines:
        raise BadMagic("empty document", 1)
    number, head = lines[0]
    if head.split() != [MAGIC, VERSION]:
        raise BadMagic(f"expected '{MAGIC} {VERSION}', got {head!r}", number)
    if len(lines) < 2:
        raise BadDimensions("missing order line", number + 1)
    number, order_line = lines[1]
    tokens = order_line.split()
    if len(tokens) != 1:
        raise BadDimensions("the order line must hold a single integer", number)
    n = _int(tokens[0], number, 1)
    if n == 0:
        raise BadDimensions("order must be positive", number, 1)

    body = lines[2:]
    rows = []
    for number, line in body[:n]:
        tokens = line.split()
        if tokens[0] == "labels":
            raise BadDimensions(f"expected {n} rows, found {len(rows)}", number)
        if len(tokens) != n:
            raise BadDimensions(f"row has {len(tokens)} entries, expected {n}", number)
        row = []
        for col, tok in enumerate(tokens, start=1):
            value = _int(tok, number, col)
            if value >= n:
                raise EntryOutOfRange(f"entry {value} is not below the order {n}", number, col)
            row.append(value)
        rows.append(row)
    if len(rows) < n:
        last = body[-1][0] + 1 if body else lines[1][0] + 1
        raise BadDimensions(f"expected {n} rows, found {len(rows)}", last)

    labels = None
    rest = body[n:]
    if rest:
        number, line = rest[0]
        tokens = line.split()
        if tokens[0] != "labels":
            raise BadDimensions(f"unexpected extra row after {n} rows", number)
        if len(tokens) - 1 != n:
            raise BadDimensions(f"labels line has {len(tokens) - 1} names, expected {n}", number)
        labels = tuple(tokens[1:])
        if len(rest) > 1:
            raise BadDimensions("unexpected content after the labels line", rest[1][0])
    return TableDocument(CayleyTable(rows), labels)


def parse_table(text: str) -> CayleyTable:
    """Parse a ``gyro 1`` document; the axioms are not checked here."""
    return parse_document(text).table


def serialize_table(table, labels=None) -> str:
    table = table if isinstance(table, CayleyTable) else CayleyTable(table)
    out = [f"{MAGIC} {VERSION}", str(table.order)]
    out.extend(" ".join(map(str, row)) for row in table.rows())
    if labels is not None:
        out.append("labels " + " ".join(labels))
    return "\n".join(out) + "\n"


def serialize_gyrations(G: FiniteGyrogroup) -> str:
    arr = G.gyr_array
    n = G.order
    return "".join(
        f"{a} {b}: " + " ".join(map(str, arr[a, b].tolist())) + "\n" for a in range(n) for b in range(n)
    )


def parse_gyrations(text: str, order: int) -> np.ndarray:
    """Read a gyration listing into an ``order x order x order`` array."""
    out = np.full((order, order, order), -1, dtype=np.intp)
    seen = np.zeros((order, order), dtype=bool)
    for number, line in _content_lines(text):
        head, sep, tail = line.partition(":")
        if not sep:
            raise ParseError("expected 'a b: images...'", number)
        pair = head.split()
        images = tail.split()
        if len(pair) != 2:
            raise BadDimensions("expected two indices before ':'", number)
        a, b = (_int(t, number, i + 1) for i, t in enumerate(pair))
        if a >= order or b >= order:
            raise EntryOutOfRange(f"pair ({a},{b}) outside order {order}", number)
        if len(images) != order:
            raise BadDimensions(f"{len(images)} images, expected {order}", number)
        values = [_int(t, number, i + 3) for i, t in enumerate(images)]
        try:
            Permutation(tuple(values))
        except ValueError as exc:
            raise ParseError(str(exc), number) from None
        out[a, b] = values
        seen[a, b] = True
    if not seen.all():
        a, b = np.argwhere(~seen)[0]
        raise BadDimensions(f"no line for pair ({a},{b})")
    return out


def format_subset(S: ElementSubset, marked: bool = False) -> str:
    return str(S) + ("*" if marked else "")


def format_set_list(sets, marks=None) -> str:
    marks = marks or [False] * len(sets)
    return "".join(format_subset(S, m) + "\n" for S, m in zip(sets, marks))


def parse_set_list(text: str, order: int) -> list[tuple[ElementSubset, bool]]:
    out = []
    for number, line in _content_lines(text):
        marked = line.endswith("*")
        body = line[:-1] if marked else line
        if not (body.startswith("{") and body.endswith("}")):
            raise ParseError(f"expected '{{a,b,...}}', got {line!r}", number)
        tokens = [t for t in body[1:-1].split(",") if t.strip()]
        values = [_int(t.strip(), number, i + 1) for i, t in enumerate(tokens)]
        if any(v >= order for v in values):
            raise EntryOutOfRange(f"element outside order {order}", number)
        out.append((ElementSubset.of(values, order), marked))
    return out


def parse_subset(text: str, order: int) -> ElementSubset:
    """``"0,1,4"`` (braces optional) as a subset of ``range(order)``."""
    body = text.strip().strip("{}")
    tokens = [t.strip() for t in body.split(",") if t.strip()]
    values = [_int(t, 1, i + 1) for i, t in enumerate(tokens)]
    if any(v >= order for v in values):
        raise EntryOutOfRange(f"element outside order {order}", 1)
    return ElementSubset.of(values, order)
