"""Matrix files.

A matrix file is a JSON object with exactly the fields ``scalar``, ``n`` and
``entries``. ``entries`` is an n x n grid; a quaternion entry is a 4-array, a
complex entry a 2-array and a rational entry a bare value. Exact kinds take
rational strings ("p/q" or "p"), f64 kinds take JSON numbers. Parsed matrices
are labelled 1..n. ``serialize_matrix`` writes the canonical layout (one
matrix row per line), which ``parse_matrix`` reads back bit-identically.
"""
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from ncdet import logger
from ncdet.algebra.matrices import LabeledMatrix
from ncdet.algebra.scalars import ScalarKind, format_scalar
from ncdet.entity.config_entity import MatrixSchemaConfig
from ncdet.exceptions import MatrixFileError


@dataclass(frozen=True)
class MatrixFile:
    scalar: ScalarKind
    n: int
    entries: List[list]

    def to_matrix(self) -> LabeledMatrix:
        return LabeledMatrix.from_rows(self.scalar, self.entries)

    @classmethod
    def from_matrix(cls, A: LabeledMatrix) -> "MatrixFile":
        if not A.is_square:
            raise MatrixFileError("only square matrices can be written")
        return cls(A.kind, A.n, A.to_lists())


def _row_lines(text: str) -> List[int]:
    """Line number of every row opening bracket inside ``entries``."""
    start = text.find('"entries"')
    if start < 0:
        return []
    start = text.find("[", start)
    lines, depth, in_string, escaped = [], 0, False, False
    line = text.count("\n", 0, start) + 1
    for ch in text[start:]:
        if ch == "\n":
            line += 1
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if ch == '"':
            in_string = True
        elif ch == "[":
            depth += 1
            if depth == 2:
                lines.append(line)
        elif ch == "]":
            depth -= 1
            if depth == 0:
                break
    return lines


class MatrixParser:
    def __init__(self, schema: Optional[MatrixSchemaConfig] = None):
        self.schema = schema or MatrixSchemaConfig.default()
        self._rational = re.compile(self.schema.rational_pattern)

    def parse_text(self, text: str) -> MatrixFile:
        try:
            document = json.loads(text)
        except json.JSONDecodeError as e:
            raise MatrixFileError(f"invalid JSON: {e.msg}", line=e.lineno) from None
        if not isinstance(document, dict):
            raise MatrixFileError("top level must be an object", line=1)

        for name in self.schema.fields:
            if name not in document:
                raise MatrixFileError("missing field", field=name)
        extra = sorted(set(document) - set(self.schema.fields))
        if extra:
            raise MatrixFileError("unexpected field", field=extra[0])

        scalar = document["scalar"]
        if scalar not in self.schema.scalars:
            raise MatrixFileError(f"unknown scalar kind {scalar!r}", field="scalar")
        kind = ScalarKind(scalar)
        arity = self.schema.scalars[scalar]

        n = document["n"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise MatrixFileError(f"n must be a positive integer, got {n!r}", field="n")

        rows = document["entries"]
        if not isinstance(rows, list):
            raise MatrixFileError("entries must be an array of rows", field="entries")
        if len(rows) != n:
            raise MatrixFileError(f"row count mismatch: n={n} but {len(rows)} rows", field="entries")

        lines = _row_lines(text)
        grid = []
        for r, row in enumerate(rows):
            line = lines[r] if r < len(lines) else None
            if not isinstance(row, list) or len(row) != n:
                got = len(row) if isinstance(row, list) else type(row).__name__
                raise MatrixFileError(f"column count mismatch: expected {n}, got {got}", line=line, field=f"entries[{r}]")
            grid.append([self._entry(kind, arity, value, line, f"entries[{r}][{c}]") for c, value in enumerate(row)])
        return MatrixFile(kind, n, grid)

    def _entry(self, kind: ScalarKind, arity: int, value, line, field):
        parts = [value] if arity == 1 else value
        if arity > 1 and (not isinstance(value, list) or len(value) != arity):
            raise MatrixFileError(f"{kind.value} entry must be an array of {arity} components", line=line, field=field)
        return kind.from_components([self._component(kind, p, line, field) for p in parts])

    def _component(self, kind: ScalarKind, value, line, field):
        if kind.is_exact:
            if not isinstance(value, str) or not self._rational.match(value):
                raise MatrixFileError(f"not a rational string: {value!r}", line=line, field=field)
            _, _, den = value.partition("/")
            if den and int(den) == 0:
                raise MatrixFileError(f"zero denominator: {value!r}", line=line, field=field)
            return value
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise MatrixFileError(f"not a number: {value!r}", line=line, field=field)
        return float(value)


def parse_matrix(path, schema: Optional[MatrixSchemaConfig] = None) -> LabeledMatrix:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise MatrixFileError(f"cannot read {path}: {e.strerror}") from None
    matrix = MatrixParser(schema).parse_text(text).to_matrix()
    logger.info(f"matrix file: {path} parsed ({matrix.kind.value}, n={matrix.n})")
    return matrix


def parse_matrix_text(text: str, schema: Optional[MatrixSchemaConfig] = None) -> LabeledMatrix:
    return MatrixParser(schema).parse_text(text).to_matrix()


def serialize_matrix(A: LabeledMatrix) -> str:
    document = MatrixFile.from_matrix(A)
    rows = [json.dumps([format_scalar(x) for x in row]) for row in document.entries]
    body = ",\n".join(f"    {row}" for row in rows)
    return (
        "{\n"
        f'  "scalar": "{document.scalar.value}",\n'
        f'  "n": {document.n},\n'
        '  "entries": [\n'
        f"{body}\n"
        "  ]\n"
        "}\n"
    )
