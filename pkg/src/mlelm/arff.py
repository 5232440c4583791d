"""Reader and writer for the ARFF subset used by multi-label benchmarks.

Supported: ``@relation``, ``@attribute`` with ``numeric``/``real``/``integer``
(an optional KEEL ``[min, max]`` range is ignored) or ``{v1, v2, ...}``
nominal types, ``@data`` followed by dense or sparse rows, ``%`` comments,
quoted names and values, ``?`` for missing values.  KEEL's ``@inputs`` and
``@outputs`` lines are accepted and ignored.  Every rejection is an
:class:`~mlelm.errors.ArffError` carrying the 1-based line number.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ArffError

NUMERIC_TYPES = ("numeric", "real", "integer")
MISSING = "?"


@dataclass(frozen=True)
class Attribute:
    name: str
    kind: str  # "numeric" or "nominal"
    values: tuple = ()
    line: int | None = None

    @property
    def is_nominal(self) -> bool:
        return self.kind == "nominal"


@dataclass
class ArffDocument:
    """Parsed file.

    ``data`` holds one column per attribute: numeric values as floats,
    nominal values as the index into ``Attribute.values``, NaN for ``?``.
    ``row_lines[i]`` is the source line of data row ``i``.
    """

    relation: str
    attributes: list
    data: np.ndarray
    row_lines: list = field(default_factory=list)

    def attribute_index(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise KeyError(name)


class _Scanner:
    """Splits one line into quoted or bare tokens."""

    def __init__(self, text: str, line: int, source):
        self.text = text
        self.pos = 0
        self.line = line
        self.source = source

    def error(self, message):
        return ArffError(message, self.line, self.source)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def quoted(self) -> str:
        quote = self.text[self.pos]
        self.pos += 1
        out = []
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "\\" and self.pos + 1 < len(self.text):
                out.append(self.text[self.pos + 1])
                self.pos += 2
                continue
            if ch == quote:
                self.pos += 1
                return "".join(out)
            out.append(ch)
            self.pos += 1
        raise self.error("unterminated quoted string")

    def word(self, stop=" \t,{}") -> str:
        """A quoted token or a bare run of characters up to ``stop``."""
        self.skip_ws()
        if self.pos >= len(self.text):
            raise self.error("unexpected end of line")
        if self.text[self.pos] in "'\"":
            return self.quoted()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in stop:
            self.pos += 1
        if self.pos == start:
            raise self.error(f"expected a name or value at column {start + 1}")
        return self.text[start:self.pos]

    def value(self) -> tuple:
        """A comma-list item; returns ``(text, was_quoted)``."""
        self.skip_ws()
        if self.pos < len(self.text) and self.text[self.pos] in "'\"":
            return self.quoted(), True
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",}":
            self.pos += 1
        token = self.text[start:self.pos].strip()
        if not token:
            raise self.error(f"empty value at column {start + 1}")
        return token, False


def _split_list(scanner: _Scanner, closing: str | None):
    items = []
    if closing and scanner.peek() == closing:
        scanner.pos += 1
        return items
    while True:
        items.append(scanner.value())
        nxt = scanner.peek()
        if nxt == ",":
            scanner.pos += 1
            continue
        if closing and nxt == closing:
            scanner.pos += 1
            return items
        if not closing and nxt == "":
            return items
        raise scanner.error(f"expected ',' or {closing or 'end of line'!r}, got {nxt!r}")


def _parse_attribute(rest: str, line: int, source) -> Attribute:
    sc = _Scanner(rest, line, source)
    name = sc.word()
    if sc.at_end():
        raise sc.error(f"attribute {name!r} has no type")
    if sc.peek() == "{":
        sc.pos += 1
        values = tuple(v for v, _ in _split_list(sc, "}"))
        if not values:
            raise sc.error(f"nominal attribute {name!r} declares no values")
        if len(set(values)) != len(values):
            raise sc.error(f"nominal attribute {name!r} repeats a value")
        if not sc.at_end():
            raise sc.error(f"unexpected text after nominal values of {name!r}")
        return Attribute(name, "nominal", values, line)
    kind = sc.word(stop=" \t[").lower()
    if kind not in NUMERIC_TYPES:
        raise sc.error(f"unsupported attribute type {kind!r} for {name!r}")
    if not sc.at_end():
        # KEEL writes "real [lo, hi]"; the range carries no information we use
        if sc.peek() != "[" or not sc.text.rstrip().endswith("]"):
            raise sc.error(f"unexpected text after type of {name!r}")
    return Attribute(name, "numeric", (), line)


def _convert(attr: Attribute, token: str, quoted: bool, sc: _Scanner) -> float:
    if token == MISSING and not quoted:
        return math.nan
    if attr.is_nominal:
        try:
            return float(attr.values.index(token))
        except ValueError:
            raise sc.error(f"value {token!r} not declared for nominal attribute {attr.name!r}") from None
    try:
        v = float(token)
    except ValueError:
        raise sc.error(f"non-numeric value {token!r} for attribute {attr.name!r}") from None
    if not math.isfinite(v):
        raise sc.error(f"non-finite value {token!r} for attribute {attr.name!r}")
    return v


def _parse_row(text: str, attributes, line: int, source) -> list:
    sc = _Scanner(text, line, source)
    n = len(attributes)
    if sc.peek() == "{":
        sc.pos += 1
        # omitted entries are zero: 0.0, or the first declared nominal value
        row = [0.0] * n
        seen = set()
        for item, quoted in _split_list(sc, "}"):
            if quoted:
                raise sc.error(f"malformed sparse entry {item!r}")
            parts = item.split(None, 1)
            if len(parts) != 2:
                raise sc.error(f"sparse entry {item!r} is not 'index value'")
            try:
                idx = int(parts[0])
            except ValueError:
                raise sc.error(f"sparse index {parts[0]!r} is not an integer") from None
            if not 0 <= idx < n:
                raise sc.error(f"sparse index {idx} outside [0, {n})")
            if idx in seen:
                raise sc.error(f"sparse index {idx} given twice")
            seen.add(idx)
            token = parts[1].strip()
            was_quoted = False
            if token[:1] in "'\"":
                inner = _Scanner(token, line, source)
                token = inner.quoted()
                if not inner.at_end():
                    raise sc.error(f"malformed sparse entry {item!r}")
                was_quoted = True
            row[idx] = _convert(attributes[idx], token, was_quoted, sc)
        if not sc.at_end():
            raise sc.error("unexpected text after sparse row")
        return row
    items = _split_list(sc, None)
    if len(items) != n:
        raise sc.error(f"row has {len(items)} values, header declares {n} attributes")
    return [_convert(a, tok, q, sc) for a, (tok, q) in zip(attributes, items)]


def _decode(data, source) -> str:
    if isinstance(data, str):
        return data
    if isinstance(data, (bytes, bytearray)):
        try:
            return bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ArffError(f"input is not valid UTF-8 ({exc})", source=source) from None
    if hasattr(data, "read"):
        return _decode(data.read(), source)
    raise TypeError(f"cannot read ARFF from {type(data).__name__}")


def read_arff(data, source=None) -> ArffDocument:
    """Parse ARFF text (``str``, ``bytes`` or a readable file object)."""
    text = _decode(data, source)
    relation = None
    attributes = []
    names = {}
    rows = []
    row_lines = []
    in_data = False
    lineno = 0
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        if in_data:
            rows.append(_parse_row(line, attributes, lineno, source))
            row_lines.append(lineno)
            continue
        if not line.startswith("@"):
            raise ArffError(f"unexpected line before @data: {line[:40]!r}", lineno, source)
        keyword, *tail = line.split(None, 1)
        rest = tail[0] if tail else ""
        keyword = keyword.lower()
        if keyword == "@relation":
            if relation is not None:
                raise ArffError("duplicate @relation", lineno, source)
            if attributes:
                raise ArffError("@relation must precede attributes", lineno, source)
            if not rest.strip():
                raise ArffError("@relation has no name", lineno, source)
            sc = _Scanner(rest, lineno, source)
            relation = sc.quoted() if sc.peek() in ("'", '"') else rest.strip()
        elif keyword == "@attribute":
            if relation is None:
                raise ArffError("@attribute before @relation", lineno, source)
            attr = _parse_attribute(rest, lineno, source)
            if attr.name in names:
                raise ArffError(
                    f"duplicate attribute name {attr.name!r} (first declared on line {names[attr.name]})",
                    lineno, source)
            names[attr.name] = lineno
            attributes.append(attr)
        elif keyword in ("@inputs", "@outputs", "@input", "@output"):
            continue
        elif keyword == "@data":
            if relation is None:
                raise ArffError("@data before @relation", lineno, source)
            if not attributes:
                raise ArffError("@data section with no attributes declared", lineno, source)
            if rest.strip():
                raise ArffError("unexpected text after @data", lineno, source)
            in_data = True
        else:
            raise ArffError(f"unknown declaration {keyword!r}", lineno, source)
    if not in_data:
        raise ArffError("missing @data section", lineno, source)
    data = np.array(rows, dtype=np.float64).reshape(len(rows), len(attributes))
    return ArffDocument(relation, attributes, data, row_lines)


def _quote(name: str) -> str:
    if name and not any(c in name for c in " \t,{}'\"%\\") and name != MISSING:
        return name
    escaped = name.replace("\\", "\\\\").replace("'", "\\'")
    return f"'{escaped}'"


def write_arff(relation: str, attributes, data) -> str:
    """Serialize a document; inverse of :func:`read_arff` for dense data.

    Floats are written with ``repr`` so values survive the round trip
    exactly.
    """
    out = [f"@relation {_quote(relation)}", ""]
    for a in attributes:
        if a.is_nominal:
            out.append(f"@attribute {_quote(a.name)} {{{','.join(_quote(v) for v in a.values)}}}")
        else:
            out.append(f"@attribute {_quote(a.name)} numeric")
    out += ["", "@data"]
    for row in np.asarray(data, dtype=np.float64):
        cells = []
        for a, v in zip(attributes, row):
            if math.isnan(v):
                cells.append(MISSING)
            elif a.is_nominal:
                cells.append(_quote(a.values[int(v)]))
            else:
                cells.append(repr(float(v)))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"
