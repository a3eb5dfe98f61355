"""Dense matrices over a :class:`SemiringSpec`.

A prop morphism ``n -> m`` is stored as an ``m x n`` matrix: composition is
the matrix product and the monoidal product is the direct sum.
"""

from __future__ import annotations

from typing import Any, Callable, Iterable, Sequence

from .semiring import SemiringSpec, Z, ZPLUS


class DimensionError(ValueError):
    pass


class SemiringMismatch(TypeError):
    pass


class SemiringMatrix:
    __slots__ = ("rows", "cols", "entries", "semiring", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[Any], semiring: SemiringSpec):
        entries = tuple(entries)
        if rows < 0 or cols < 0:
            raise DimensionError("negative dimension")
        if len(entries) != rows * cols:
            raise DimensionError(f"{len(entries)} entries for a {rows}x{cols} matrix")
        for e in entries:
            if not semiring.contains(e):
                raise ValueError(f"entry {e!r} is not in {semiring.name}")
        self.rows = rows
        self.cols = cols
        self.entries = entries
        self.semiring = semiring
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], semiring: SemiringSpec = ZPLUS, cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError("ragged rows")
        return cls(len(rows), cols, (semiring.coerce(x) for r in rows for x in r), semiring)

    @classmethod
    def zeros(cls, rows: int, cols: int, semiring: SemiringSpec = ZPLUS):
        return cls(rows, cols, [semiring.zero] * (rows * cols), semiring)

    @classmethod
    def identity(cls, n: int, semiring: SemiringSpec = ZPLUS):
        z, o = semiring.zero, semiring.one
        return cls(n, n, (o if i == j else z for i in range(n) for j in range(n)), semiring)

    @classmethod
    def empty(cls, semiring: SemiringSpec = ZPLUS):
        return cls(0, 0, (), semiring)

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> SemiringMatrix:
        return SemiringMatrix(len(rows), len(cols), (self[i, j] for i in rows for j in cols), self.semiring)

    def block(self, r0: int, r1: int, c0: int, c1: int) -> SemiringMatrix:
        return self.submatrix(range(r0, r1), range(c0, c1))

    # -- algebra ------------------------------------------------------
    def map(self, fn: Callable[[Any], Any], semiring: SemiringSpec | None = None) -> SemiringMatrix:
        return SemiringMatrix(self.rows, self.cols, (fn(x) for x in self.entries), semiring or self.semiring)

    def transpose(self) -> SemiringMatrix:
        return SemiringMatrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)), self.semiring)

    def __matmul__(self, other: SemiringMatrix) -> SemiringMatrix:
        return mat_mul(self, other)

    def __add__(self, other: SemiringMatrix) -> SemiringMatrix:
        _check_same(self, other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        add = self.semiring.add
        return SemiringMatrix(self.rows, self.cols, (add(a, b) for a, b in zip(self.entries, other.entries)), self.semiring)

    def __sub__(self, other: SemiringMatrix) -> SemiringMatrix:
        _check_same(self, other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        sub = self.semiring.sub
        return SemiringMatrix(self.rows, self.cols, (sub(a, b) for a, b in zip(self.entries, other.entries)), self.semiring)

    def scale(self, c) -> SemiringMatrix:
        mul = self.semiring.mul
        return self.map(lambda x: mul(c, x))

    def power(self, k: int) -> SemiringMatrix:
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        result = SemiringMatrix.identity(self.rows, self.semiring)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def trace(self):
        if not self.is_square:
            raise DimensionError("trace of a non-square matrix")
        return self.semiring.sum(self[i, i] for i in range(self.rows))

    def with_semiring(self, semiring: SemiringSpec) -> SemiringMatrix:
        return SemiringMatrix(self.rows, self.cols, (semiring.coerce(x) for x in self.entries), semiring)

    def is_zero(self) -> bool:
        z = self.semiring.zero
        return all(x == z for x in self.entries)

    def max_entry(self) -> int:
        return max((int(x) for x in self.entries), default=0)

    # -- identity -----------------------------------------------------
    def key(self) -> tuple:
        return (self.rows, self.cols, self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SemiringMatrix):
            return NotImplemented
        return self.semiring.name == other.semiring.name and self.key() == other.key()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.semiring.name, self.key()))
        return self._hash

    def __repr__(self) -> str:
        return f"SemiringMatrix({self.to_rows()!r}, {self.semiring.name})"

    def __str__(self) -> str:
        return render_matrix(self)


def _check_same(a: SemiringMatrix, b: SemiringMatrix) -> None:
    if a.semiring.name != b.semiring.name:
        raise SemiringMismatch(f"{a.semiring.name} vs {b.semiring.name}")


def mat_mul(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    """Matrix product ``a . b`` (as morphisms: ``a`` after ``b``)."""
    _check_same(a, b)
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    sr = a.semiring
    add, mul, zero = sr.add, sr.mul, sr.zero
    n, m, p = a.rows, a.cols, b.cols
    ae, be = a.entries, b.entries
    out = []
    for i in range(n):
        arow = ae[i * m:(i + 1) * m]
        for j in range(p):
            acc = zero
            for k in range(m):
                x = arow[k]
                if x != zero:
                    y = be[k * p + j]
                    if y != zero:
                        acc = add(acc, mul(x, y))
            out.append(acc)
    return SemiringMatrix(n, p, out, sr)


def mat_direct_sum(a: SemiringMatrix, b: SemiringMatrix) -> SemiringMatrix:
    """Block-diagonal ``diag(a, b)``: the tensor of two morphisms."""
    _check_same(a, b)
    sr = a.semiring
    rows, cols = a.rows + b.rows, a.cols + b.cols
    z = sr.zero
    out = []
    for i in range(rows):
        for j in range(cols):
            if i < a.rows and j < a.cols:
                out.append(a[i, j])
            elif i >= a.rows and j >= a.cols:
                out.append(b[i - a.rows, j - a.cols])
            else:
                out.append(z)
    return SemiringMatrix(rows, cols, out, sr)


def direct_sum(*mats: SemiringMatrix, semiring: SemiringSpec | None = None) -> SemiringMatrix:
    if not mats:
        return SemiringMatrix.empty(semiring or ZPLUS)
    acc = mats[0]
    for m in mats[1:]:
        acc = mat_direct_sum(acc, m)
    return acc


def _check_perm(perm: Sequence[int]) -> list[int]:
    p = list(perm)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"invalid permutation {perm!r}")
    return p


def permutation_matrix(perm: Sequence[int], semiring: SemiringSpec = ZPLUS) -> SemiringMatrix:
    """Matrix sending wire ``j`` to position ``perm[j]``: entry ``(perm[j], j)`` is one."""
    p = _check_perm(perm)
    n = len(p)
    out = [semiring.zero] * (n * n)
    for j, i in enumerate(p):
        out[i * n + j] = semiring.one
    return SemiringMatrix(n, n, out, semiring)


def block_swap_perm(a: int, b: int) -> list[int]:
    """Permutation of ``sigma_{a,b}``: the first ``a`` wires move below the last ``b``."""
    return [b + j for j in range(a)] + [j for j in range(b)]


def block_swap(a: int, b: int, semiring: SemiringSpec = ZPLUS) -> SemiringMatrix:
    return permutation_matrix(block_swap_perm(a, b), semiring)


def invert_perm(perm: Sequence[int]) -> list[int]:
    p = _check_perm(perm)
    inv = [0] * len(p)
    for j, i in enumerate(p):
        inv[i] = j
    return inv


def compose_perm(outer: Sequence[int], inner: Sequence[int]) -> list[int]:
    """Permutation of ``outer`` after ``inner`` (wire ``j`` goes to ``outer[inner[j]]``)."""
    return [outer[i] for i in inner]


def conjugate(m: SemiringMatrix, perm: Sequence[int]) -> SemiringMatrix:
    """``P m P^-1`` for the permutation matrix ``P`` of ``perm``; relabels index ``j`` as ``perm[j]``."""
    inv = invert_perm(perm)
    return m.submatrix(inv, inv)


def int_matrix(rows: Sequence[Sequence[int]]) -> SemiringMatrix:
    """Convenience: a matrix over Z_+ when all entries are nonnegative, else over Z."""
    flat = [x for r in rows for x in r]
    sr = ZPLUS if all(x >= 0 for x in flat) else Z
    return SemiringMatrix.from_rows(rows, sr)


def render_matrix(m: SemiringMatrix) -> str:
    """Matrix document text: one row per line, whitespace-separated entries."""
    if m.rows == 0:
        return ""
    cells = [[m.semiring.render(x) for x in m.row(i)] for i in range(m.rows)]
    return "\n".join(" ".join(r) for r in cells)
