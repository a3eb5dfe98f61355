"""Matrix documents: one row per line, whitespace-separated entries.

Entries are integers or polynomials in ``t`` (``2t^2+t``, ``3``, ``t``).
Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from .algebra import SemiringMatrix, SemiringSpec, ZPLUS, by_name, render_matrix


class MatrixParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


def parse_matrix(text: str, semiring: SemiringSpec | str = ZPLUS) -> SemiringMatrix:
    sr = by_name(semiring) if isinstance(semiring, str) else semiring
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        row = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            try:
                row.append(sr.parse(tok))
            except (ValueError, TypeError) as exc:
                raise MatrixParseError(f"bad entry {tok!r} for ring {sr.name}: {exc}", lineno, col) from None
            col += len(tok) - 1
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixParseError(f"row has {len(row)} entries, expected {width}", lineno, 1)
        rows.append(row)
    if not rows:
        raise MatrixParseError("empty matrix document")
    return SemiringMatrix(len(rows), width, (x for r in rows for x in r), sr)


def read_matrix(path: str, semiring: SemiringSpec | str = ZPLUS) -> SemiringMatrix:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_matrix(text, semiring)
    except MatrixParseError as exc:
        raise MatrixParseError(f"{path}: {exc}") from None


def matrix_to_json(m: SemiringMatrix) -> dict:
    return {"ring": m.semiring.name, "rows": m.rows, "cols": m.cols, "text": render_matrix(m)}


def matrix_from_json(obj: dict) -> SemiringMatrix:
    sr = by_name(obj["ring"])
    rows, cols = int(obj["rows"]), int(obj["cols"])
    if rows == 0 or cols == 0:
        return SemiringMatrix.zeros(rows, cols, sr)
    m = parse_matrix(obj["text"], sr)
    if m.shape != (rows, cols):
        raise MatrixParseError(f"declared shape {rows}x{cols} but text is {m.rows}x{m.cols}")
    return m
