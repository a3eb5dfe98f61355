"""Weighted relations over a finite commutative monoid.

A morphism ``n -> m`` is an N-infinity matrix indexed by ``X^m x X^n``;
tuples are encoded in mixed radix with the first wire as the most
significant digit. Storage is sparse by column, since the interesting
morphisms (graphs of functions) have a single entry per column.
"""

from __future__ import annotations

import json
from itertools import product
from typing import Callable, Mapping, Optional, Sequence

from . import kernels
from .algebra import NATINF, IntPoly, NatInf, SemiringMatrix
from .prop.model import GeneratorModel

ZERO = NatInf(0)
ONE = NatInf(1)


class MonoidError(ValueError):
    pass


class EnumerationBudgetExceeded(RuntimeError):
    pass


class FiniteMonoid:
    """Commutative monoid given by its Cayley table over indices ``0..size-1``."""

    def __init__(self, table: Sequence[Sequence[int]], unit: int, labels: Optional[Sequence[str]] = None):
        size = len(table)
        self.table: tuple[tuple[int, ...], ...] = tuple(tuple(int(v) for v in row) for row in table)
        self.unit = int(unit)
        self.labels = tuple(str(x) for x in labels) if labels is not None else tuple(str(i) for i in range(size))
        if size == 0:
            raise MonoidError("a monoid has at least one element")
        if len(self.labels) != size:
            raise MonoidError("label count differs from table size")
        for row in self.table:
            if len(row) != size or any(not 0 <= v < size for v in row):
                raise MonoidError("table is not a square table of element indices")
        if not 0 <= self.unit < size:
            raise MonoidError("unit index out of range")
        t = self.table
        r = range(size)
        for x in r:
            if t[self.unit][x] != x or t[x][self.unit] != x:
                raise MonoidError(f"unit fails on element {self.labels[x]}")
            for y in r:
                if t[x][y] != t[y][x]:
                    raise MonoidError(f"not commutative at ({self.labels[x]}, {self.labels[y]})")
                for z in r:
                    if t[t[x][y]][z] != t[x][t[y][z]]:
                        raise MonoidError(f"not associative at ({x}, {y}, {z})")

    @property
    def size(self) -> int:
        return len(self.table)

    def op(self, x: int, y: int) -> int:
        return self.table[x][y]

    def multiple(self, x: int, a: int) -> int:
        """``x`` combined with itself ``a`` times (the unit for ``a = 0``)."""
        acc = self.unit
        for _ in range(a):
            acc = self.table[acc][x]
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteMonoid) and (self.table, self.unit) == (other.table, other.unit)

    def __hash__(self) -> int:
        return hash((self.table, self.unit))

    def __repr__(self) -> str:
        return f"FiniteMonoid(size={self.size}, labels={list(self.labels)})"

    # standard examples
    @classmethod
    def trivial(cls) -> FiniteMonoid:
        return cls([[0]], 0, ["e"])

    @classmethod
    def cyclic(cls, n: int) -> FiniteMonoid:
        """Z/n under addition."""
        return cls([[(x + y) % n for y in range(n)] for x in range(n)], 0)

    @classmethod
    def subsets(cls, k: int) -> FiniteMonoid:
        """Subsets of ``{0..k-1}`` under union, encoded as bitmasks."""
        n = 1 << k
        labels = ["{" + ",".join(str(b) for b in range(k) if x >> b & 1) + "}" for x in range(n)]
        return cls([[x | y for y in range(n)] for x in range(n)], 0, labels)

    @classmethod
    def max_chain(cls, n: int) -> FiniteMonoid:
        """``{0..n-1}`` under max (an idempotent, non-group monoid)."""
        return cls([[max(x, y) for y in range(n)] for x in range(n)], 0)

    @classmethod
    def multiplicative(cls, n: int) -> FiniteMonoid:
        """Z/n under multiplication."""
        return cls([[(x * y) % n for y in range(n)] for x in range(n)], 1 % n)


class MonoidHom:
    def __init__(self, monoid: FiniteMonoid, mapping: Sequence[int]):
        self.monoid = monoid
        self.map = tuple(int(v) for v in mapping)
        size = monoid.size
        if len(self.map) != size or any(not 0 <= v < size for v in self.map):
            raise MonoidError("homomorphism must map every element to an element index")
        if self.map[monoid.unit] != monoid.unit:
            raise MonoidError("homomorphism does not fix the unit")
        t = monoid.table
        for x in range(size):
            for y in range(size):
                if self.map[t[x][y]] != t[self.map[x]][self.map[y]]:
                    raise MonoidError(f"not a homomorphism at ({monoid.labels[x]}, {monoid.labels[y]})")

    @classmethod
    def identity(cls, monoid: FiniteMonoid) -> MonoidHom:
        return cls(monoid, range(monoid.size))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def power(self, k: int) -> tuple[int, ...]:
        out = tuple(range(self.monoid.size))
        for _ in range(k):
            out = tuple(self.map[x] for x in out)
        return out


def endomorphisms(monoid: FiniteMonoid) -> list[MonoidHom]:
    """All monoid endomorphisms, by brute force over maps (small monoids only)."""
    out = []
    for mp in product(range(monoid.size), repeat=monoid.size):
        try:
            out.append(MonoidHom(monoid, mp))
        except MonoidError:
            pass
    return out


# -- JSON ----------------------------------------------------------------


def monoid_from_json(obj: Mapping) -> tuple[FiniteMonoid, MonoidHom]:
    """Read ``{"elements", "table", "unit", "hom"?}``; values may be indices or element labels."""
    try:
        labels = [str(x) for x in obj["elements"]]
        index = {name: k for k, name in enumerate(labels)}

        def elem(v) -> int:
            if isinstance(v, str):
                if v not in index:
                    raise MonoidError(f"unknown element {v!r}")
                return index[v]
            if isinstance(v, bool) or not isinstance(v, int):
                raise MonoidError(f"bad element reference {v!r}")
            return v

        table = [[elem(v) for v in row] for row in obj["table"]]
        monoid = FiniteMonoid(table, elem(obj["unit"]), labels)
        hom_obj = obj.get("hom")
        hom = MonoidHom(monoid, [elem(v) for v in hom_obj]) if hom_obj is not None else MonoidHom.identity(monoid)
    except KeyError as exc:
        raise MonoidError(f"monoid document lacks {exc}") from None
    except TypeError as exc:
        raise MonoidError(f"malformed monoid document: {exc}") from None
    return monoid, hom


def monoid_to_json(monoid: FiniteMonoid, hom: Optional[MonoidHom] = None) -> dict:
    out = {"elements": list(monoid.labels), "table": [list(r) for r in monoid.table], "unit": monoid.unit}
    if hom is not None:
        out["hom"] = list(hom.map)
    return out


def load_monoid(path: str) -> tuple[FiniteMonoid, MonoidHom]:
    with open(path, encoding="utf-8") as fh:
        return monoid_from_json(json.load(fh))


# -- weighted morphisms ----------------------------------------------------


def _add(a: NatInf, b: NatInf) -> NatInf:
    return a + b


class WeightedMorphism:
    __slots__ = ("size", "n_in", "n_out", "columns")

    def __init__(self, size: int, n_in: int, n_out: int, columns: Mapping[int, Mapping[int, NatInf]]):
        self.size = size
        self.n_in = n_in
        self.n_out = n_out
        cols = {}
        lim_in, lim_out = size ** n_in, size ** n_out
        for j, col in columns.items():
            if not 0 <= j < lim_in:
                raise IndexError(f"input index {j} out of range")
            c = {}
            for i, v in col.items():
                if not 0 <= i < lim_out:
                    raise IndexError(f"output index {i} out of range")
                v = v if isinstance(v, NatInf) else NatInf(v)
                if v:
                    c[i] = v
            if c:
                cols[j] = c
        self.columns: dict[int, dict[int, NatInf]] = cols

    # constructors
    @classmethod
    def from_function(cls, size: int, n_in: int, n_out: int, fn: Callable[[tuple], tuple]) -> WeightedMorphism:
        cols = {}
        for j, xs in enumerate(product(range(size), repeat=n_in)):
            cols[j] = {encode(fn(xs), size): ONE}
        return cls(size, n_in, n_out, cols)

    @classmethod
    def identity(cls, size: int, n: int = 1) -> WeightedMorphism:
        return cls(size, n, n, {j: {j: ONE} for j in range(size ** n)})

    @classmethod
    def permutation(cls, size: int, perm: Sequence[int]) -> WeightedMorphism:
        """Wire ``j`` moves to position ``perm[j]``."""
        n = len(perm)

        def fn(xs):
            out = [0] * n
            for j, p in enumerate(perm):
                out[p] = xs[j]
            return tuple(out)

        return cls.from_function(size, n, n, fn)

    @classmethod
    def from_rows(cls, size: int, n_in: int, n_out: int, rows: Sequence[Sequence]) -> WeightedMorphism:
        cols: dict[int, dict[int, NatInf]] = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v:
                    cols.setdefault(j, {})[i] = v if isinstance(v, NatInf) else NatInf(v)
        return cls(size, n_in, n_out, cols)

    # access
    def entry(self, out_idx: int, in_idx: int) -> NatInf:
        return self.columns.get(in_idx, {}).get(out_idx, ZERO)

    def to_matrix(self) -> SemiringMatrix:
        r, c = self.size ** self.n_out, self.size ** self.n_in
        return SemiringMatrix(r, c, (self.entry(i, j) for i in range(r) for j in range(c)), NATINF)

    def apply(self, vec: Mapping[int, NatInf]) -> dict[int, NatInf]:
        out: dict[int, NatInf] = {}
        for j, w in vec.items():
            for i, v in self.columns.get(j, {}).items():
                out[i] = out.get(i, ZERO) + w * v
        return {i: v for i, v in out.items() if v}

    def scalar(self) -> NatInf:
        if self.n_in or self.n_out:
            raise ValueError("not a 0 -> 0 morphism")
        return self.entry(0, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedMorphism):
            return NotImplemented
        return (self.size, self.n_in, self.n_out, self.columns) == (other.size, other.n_in, other.n_out, other.columns)

    def __hash__(self) -> int:
        items = tuple(sorted((j, tuple(sorted((i, v.value if v.value is not None else -1) for i, v in c.items())))
                             for j, c in self.columns.items()))
        return hash((self.size, self.n_in, self.n_out, items))

    def __repr__(self) -> str:
        return f"WeightedMorphism(|X|={self.size}, {self.n_in}->{self.n_out}, nnz={sum(map(len, self.columns.values()))})"


def encode(digits: Sequence[int], size: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * size + d
    return idx


def decode(idx: int, size: int, n: int) -> tuple[int, ...]:
    out = [0] * n
    for k in range(n - 1, -1, -1):
        idx, out[k] = divmod(idx, size)
    return tuple(out)


def w_compose(f: WeightedMorphism, g: WeightedMorphism) -> WeightedMorphism:
    """``f`` after ``g``."""
    if f.size != g.size or f.n_in != g.n_out:
        raise ValueError(f"cannot compose {f!r} after {g!r}")
    return WeightedMorphism(f.size, g.n_in, f.n_out, {j: f.apply(col) for j, col in g.columns.items()})


def w_tensor(f: WeightedMorphism, g: WeightedMorphism) -> WeightedMorphism:
    if f.size != g.size:
        raise ValueError("monoid size mismatch")
    s = f.size
    gi, go = s ** g.n_in, s ** g.n_out
    cols = {}
    for j1, c1 in f.columns.items():
        for j2, c2 in g.columns.items():
            cols[j1 * gi + j2] = {i1 * go + i2: v1 * v2 for i1, v1 in c1.items() for i2, v2 in c2.items()}
    return WeightedMorphism(s, f.n_in + g.n_in, f.n_out + g.n_out, cols)


def partial_trace(f: WeightedMorphism) -> WeightedMorphism:
    """Trace out the first wire: entry ``(z, y)`` is the sum over ``x`` of ``f((x, z), (x, y))``."""
    if f.n_in < 1 or f.n_out < 1:
        raise ValueError("nothing to trace")
    s = f.size
    rest_in, rest_out = s ** (f.n_in - 1), s ** (f.n_out - 1)
    cols: dict[int, dict[int, NatInf]] = {}
    for j, col in f.columns.items():
        x, y = divmod(j, rest_in)
        for i, v in col.items():
            xo, z = divmod(i, rest_out)
            if xo == x:
                c = cols.setdefault(y, {})
                c[z] = c.get(z, ZERO) + v
    return WeightedMorphism(s, f.n_in - 1, f.n_out - 1, cols)


def trace_n(f: WeightedMorphism, k: int) -> WeightedMorphism:
    for _ in range(k):
        f = partial_trace(f)
    return f


def apply_layer(blocks: Sequence[WeightedMorphism], vec: Mapping[int, NatInf]) -> dict[int, NatInf]:
    """Apply the tensor product of ``blocks`` to a sparse vector without materializing it."""
    if not blocks:
        return dict(vec)
    s = blocks[0].size
    out: dict[int, NatInf] = {}
    n_in = sum(b.n_in for b in blocks)
    for idx, w in vec.items():
        digits = decode(idx, s, n_in)
        partial = {0: w}
        pos = 0
        for b in blocks:
            sub = encode(digits[pos:pos + b.n_in], s)
            pos += b.n_in
            col = b.columns.get(sub)
            if not col:
                partial = {}
                break
            scale = s ** b.n_out
            partial = {acc * scale + i: pw * v for acc, pw in partial.items() for i, v in col.items()}
        for i, v in partial.items():
            out[i] = out.get(i, ZERO) + v
    return out


def permute_vector(vec: Mapping[int, NatInf], size: int, perm: Sequence[int]) -> dict[int, NatInf]:
    n = len(perm)
    out: dict[int, NatInf] = {}
    for idx, w in vec.items():
        xs = decode(idx, size, n)
        ys = [0] * n
        for j, p in enumerate(perm):
            ys[p] = xs[j]
        k = encode(ys, size)
        out[k] = out.get(k, ZERO) + w
    return out


# -- the monoid model -----------------------------------------------------


class WeightedModel(GeneratorModel):
    """Traced category of weighted relations with the monoid as bialgebra."""

    trace_capable = True

    def __init__(self, monoid: FiniteMonoid, hom: Optional[MonoidHom] = None, validate: bool = True):
        self.monoid = monoid
        self.hom = hom if hom is not None else MonoidHom.identity(monoid)
        if self.hom.monoid != monoid:
            raise MonoidError("homomorphism belongs to a different monoid")
        s = monoid.size
        t = monoid.table
        gens = {
            "mu": WeightedMorphism.from_function(s, 2, 1, lambda xy: (t[xy[0]][xy[1]],)),
            "eta": WeightedMorphism.from_function(s, 0, 1, lambda _: (monoid.unit,)),
            "delta": WeightedMorphism.from_function(s, 1, 2, lambda x: (x[0], x[0])),
            "eps": WeightedMorphism.from_function(s, 1, 0, lambda _: ()),
            "h": WeightedMorphism.from_function(s, 1, 1, lambda x: (self.hom.map[x[0]],)),
        }
        super().__init__(NATINF, gens, validate=validate)

    @property
    def size(self) -> int:
        return self.monoid.size

    def identity(self, n: int) -> WeightedMorphism:
        return WeightedMorphism.identity(self.size, n)

    def symmetry(self) -> WeightedMorphism:
        return WeightedMorphism.permutation(self.size, [1, 0])

    def compose(self, f, g):
        return w_compose(f, g)

    def tensor(self, f, g):
        return w_tensor(f, g)

    def trace(self, f):
        return partial_trace(f)

    def arity_of(self, f) -> tuple[int, int]:
        return f.n_in, f.n_out

    def endo(self, c) -> tuple[int, ...]:
        """Table of the endomorphism ``x -> c(h)(x)`` for a coefficient in Z_+ or Z_+[t]."""
        p = IntPoly.lift(int(c)) if isinstance(c, NatInf) else IntPoly.lift(c)
        if not p.is_nonnegative():
            raise ValueError(f"coefficient {p} is not in Z_+[t]")
        m = self.monoid
        out = [m.unit] * m.size
        for k, ck in enumerate(p.coeffs):
            if ck:
                hk = self.hom.power(k)
                out = [m.op(out[x], m.multiple(hk[x], ck)) for x in range(m.size)]
        return tuple(out)

    def interpret(self, mat: SemiringMatrix) -> WeightedMorphism:
        """Image of a Z_+ or Z_+[t] matrix: ``x -> (sum_j M_ij(h) x_j)_i``."""
        rows, cols = mat.rows, mat.cols
        m = self.monoid
        tabs = [[self.endo(mat[i, j]) if mat[i, j] else None for j in range(cols)] for i in range(rows)]

        def fn(xs):
            out = []
            for i in range(rows):
                acc = m.unit
                for j in range(cols):
                    tab = tabs[i][j]
                    if tab is not None:
                        acc = m.op(acc, tab[xs[j]])
                out.append(acc)
            return tuple(out)

        return WeightedMorphism.from_function(self.size, cols, rows, fn)


def monoid_model(monoid: FiniteMonoid, hom: Optional[MonoidHom] = None) -> WeightedModel:
    return WeightedModel(monoid, hom)


def copy_cascade(model: WeightedModel, k: int) -> WeightedMorphism:
    """``1 -> k`` cascade of copies (discard for ``k = 0``)."""
    g = model.generators
    if k == 0:
        return g["eps"]
    acc = model.identity(1)
    for _ in range(k - 1):
        # split the last output once more
        acc = w_compose(w_tensor(model.identity(acc.n_out - 1), g["delta"]), acc)
    return acc


def sum_cascade(model: WeightedModel, k: int) -> WeightedMorphism:
    """``k -> 1`` cascade of products (the unit for ``k = 0``)."""
    g = model.generators
    if k == 0:
        return g["eta"]
    acc = model.identity(1)
    for _ in range(k - 1):
        acc = w_compose(g["mu"], w_tensor(acc, model.identity(1)))
    return acc


def interpret_matrix(mat: SemiringMatrix, monoid: FiniteMonoid, hom: Optional[MonoidHom] = None,
                     budget: int = 10 ** 6) -> NatInf:
    """Scalar obtained by wiring ``mat`` as a closed diagram in the monoid model.

    Copy layer (one cascade per column), one wire per nonzero entry carrying
    ``a_ij``-fold addition after ``h``, a routing permutation, a sum layer
    (one cascade per row), then every wire traced.
    """
    if not mat.is_square:
        raise ValueError("interpret_matrix needs a square matrix")
    model = WeightedModel(monoid, hom, validate=False)
    n = mat.rows
    s = monoid.size
    if s ** n > budget:
        raise EnumerationBudgetExceeded(f"|X|^n = {s}^{n} exceeds the budget {budget}")
    wires = [(j, i, int(mat[i, j])) for j in range(n) for i in range(n) if int(mat[i, j])]
    out_deg = [sum(1 for w in wires if w[0] == j) for j in range(n)]
    in_deg = [sum(1 for w in wires if w[1] == i) for i in range(n)]
    copy_layer = [copy_cascade(model, d) for d in out_deg]
    h = model.generators["h"]
    wire_layer = [w_compose(sum_cascade(model, a), w_compose(copy_cascade(model, a), h)) for _, _, a in wires]
    by_target = sorted(range(len(wires)), key=lambda w: (wires[w][1], wires[w][0]))
    perm = [0] * len(wires)
    for pos, w in enumerate(by_target):
        perm[w] = pos
    sum_layer = [sum_cascade(model, d) for d in in_deg]
    cols = {}
    for j in range(s ** n):
        v = apply_layer(copy_layer, {j: ONE})
        v = apply_layer(wire_layer, v)
        v = permute_vector(v, s, perm)
        v = apply_layer(sum_layer, v)
        cols[j] = v
    f = WeightedMorphism(s, n, n, cols)
    return trace_n(f, n).scalar()


def count_fixed_points(mat: SemiringMatrix, monoid: FiniteMonoid, hom: Optional[MonoidHom] = None,
                       budget: int = 10 ** 8) -> NatInf:
    """Number of ``x`` in ``X^n`` with ``h((M x)_i) = x_i`` for all ``i``, by enumeration."""
    if not mat.is_square:
        raise ValueError("count_fixed_points needs a square matrix")
    hom = hom if hom is not None else MonoidHom.identity(monoid)
    n = mat.rows
    if monoid.size ** n > budget:
        raise EnumerationBudgetExceeded(f"|X|^n = {monoid.size}^{n} exceeds the budget {budget}")
    rows = [[int(x) for x in mat.row(i)] for i in range(n)]
    if any(x < 0 for r in rows for x in r):
        raise ValueError("count_fixed_points needs a Z_+ matrix")
    return NatInf(kernels.count_fixed_points([list(r) for r in monoid.table], monoid.unit, list(hom.map), rows))


STANDARD_MONOIDS: dict[str, Callable[[], FiniteMonoid]] = {
    "trivial": FiniteMonoid.trivial,
    "z2": lambda: FiniteMonoid.cyclic(2),
    "z3": lambda: FiniteMonoid.cyclic(3),
    "z4": lambda: FiniteMonoid.cyclic(4),
    "subsets2": lambda: FiniteMonoid.subsets(2),
    "max3": lambda: FiniteMonoid.max_chain(3),
    "mul4": lambda: FiniteMonoid.multiplicative(4),
}
