"""The traced completion of a matrix prop, realized as pairs ``[M, k]``.

The first ``k`` wires of ``M`` (inputs and outputs) are dashed, i.e. traced.
Composition and tensor route wires with explicit permutations; equality of
pairs is the equivalence generated by the moves in this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Optional

from ..algebra import (
    DimensionError,
    IntPoly,
    SemiringMatrix,
    invert_perm,
    mat_direct_sum,
    mat_mul,
    permutation_matrix,
)
from ..certificate import MoveCertificate, MoveError, SearchStats, bidirectional_search, register_step
from .. import kernels


@dataclass(frozen=True)
class TracedMorphism:
    dashed: int
    underlying: SemiringMatrix

    def __post_init__(self):
        u = self.underlying
        if self.dashed < 0 or u.rows < self.dashed or u.cols < self.dashed:
            raise DimensionError(f"{u.rows}x{u.cols} matrix cannot carry {self.dashed} dashed wires")

    @property
    def n_in(self) -> int:
        return self.underlying.cols - self.dashed

    @property
    def n_out(self) -> int:
        return self.underlying.rows - self.dashed

    @property
    def semiring(self):
        return self.underlying.semiring

    def __str__(self) -> str:
        return f"[{self.underlying.to_rows()}, {self.dashed}]"


def route(m: SemiringMatrix, perm_in: list[int], perm_out: list[int]) -> SemiringMatrix:
    """``P_out . m . P_in``: input wire ``j`` feeds ``m``'s input ``perm_in[j]``, ``m``'s output ``i`` lands on ``perm_out[i]``."""
    sr = m.semiring
    return mat_mul(mat_mul(permutation_matrix(perm_out, sr), m), permutation_matrix(perm_in, sr))


def iota(m: SemiringMatrix) -> TracedMorphism:
    return TracedMorphism(0, m)


def tp_compose(f: TracedMorphism, g: TracedMorphism) -> TracedMorphism:
    """``f`` after ``g``.

    Result wires, top to bottom: ``g``'s dashed block, ``f``'s dashed block,
    a loop carrying ``g``'s visible outputs into ``f``'s visible inputs, then
    the visible wires.
    """
    if f.n_in != g.n_out:
        raise DimensionError(f"cannot compose: f takes {f.n_in} inputs, g gives {g.n_out}")
    p, q = f.dashed, g.dashed
    a, b, c = f.n_in, f.n_out, g.n_in
    d = mat_direct_sum(g.underlying, f.underlying)
    # d inputs: [q | c | p | a], outputs: [q | a | p | b]
    perm_in = (
        list(range(q))
        + [q + c + i for i in range(p)]
        + [q + c + p + i for i in range(a)]
        + [q + i for i in range(c)]
    )
    perm_out = (
        list(range(q))
        + [q + p + i for i in range(a)]
        + [q + i for i in range(p)]
        + [q + p + a + i for i in range(b)]
    )
    return TracedMorphism(p + q + a, route(d, perm_in, perm_out))


def tp_tensor(f: TracedMorphism, g: TracedMorphism) -> TracedMorphism:
    """``f`` on the top visible wires, ``g`` below; dashed blocks gathered first."""
    p, q = f.dashed, g.dashed
    a, b, c, dd = f.n_in, f.n_out, g.n_in, g.n_out
    d = mat_direct_sum(f.underlying, g.underlying)
    # d inputs: [p | a | q | c], outputs: [p | b | q | dd]
    perm_in = list(range(p)) + [p + a + i for i in range(q)] + [p + i for i in range(a)] + [p + a + q + i for i in range(c)]
    perm_out = list(range(p)) + [p + q + i for i in range(b)] + [p + i for i in range(q)] + [p + q + b + i for i in range(dd)]
    return TracedMorphism(p + q, route(d, perm_in, perm_out))


def tp_trace(f: TracedMorphism) -> TracedMorphism:
    if f.n_in < 1 or f.n_out < 1:
        raise DimensionError("no visible wire to trace")
    # dashed-first convention: the first visible wire already sits right after the dashed block
    return TracedMorphism(f.dashed + 1, f.underlying)


def full_trace(m: SemiringMatrix) -> TracedMorphism:
    if not m.is_square:
        raise DimensionError("full trace of a non-square matrix")
    return TracedMorphism(m.rows, m)


def honest_value(f: TracedMorphism, model) -> Any:
    """Evaluate a pair in a trace-capable model: trace the image of the underlying matrix ``dashed`` times."""
    if not getattr(model, "trace_capable", False):
        raise TypeError("model has no trace")
    v = model.interpret(f.underlying)
    for _ in range(f.dashed):
        v = model.trace(v)
    return v


# -- moves ------------------------------------------------------------


def _identity(n, sr):
    return SemiringMatrix.identity(n, sr)


def _expand_perms(k: int, n: int, m: int, site: int) -> tuple[list[int], list[int]]:
    """Routing of the expanded pair at input ``site`` (see :class:`Expand`)."""
    width_in = k + n
    perm_in = [site]
    for i in range(width_in):
        perm_in.append(width_in if i == site else i)
    perm_out = [1 + i for i in range(k + m)] + [0]
    return perm_in, perm_out


def _matrix_json(m):
    from ..io import matrix_to_json

    return matrix_to_json(m)


def _matrix_unjson(obj):
    from ..io import matrix_from_json

    return matrix_from_json(obj)


@register_step("pair.slide")
@dataclass(frozen=True)
class Slide:
    """Slide ``g`` through the trace.

    ``post``: the pair is ``[(g + I) . C, g.rows]`` and becomes ``[C . (g + I), g.cols]``.
    ``pre``: the reverse.
    """

    g: SemiringMatrix
    cofactor: SemiringMatrix
    direction: str = "post"

    def _sides(self, n: int, m: int):
        sr = self.g.semiring
        left = mat_mul(mat_direct_sum(self.g, _identity(m, sr)), self.cofactor)
        right = mat_mul(self.cofactor, mat_direct_sum(self.g, _identity(n, sr)))
        return left, right

    def apply(self, f: TracedMorphism) -> TracedMorphism:
        g, c = self.g, self.cofactor
        if self.direction not in ("post", "pre"):
            raise MoveError(f"bad slide direction {self.direction!r}")
        n, m = f.n_in, f.n_out
        if c.rows != g.cols + m or c.cols != g.rows + n:
            raise MoveError("slide cofactor has the wrong shape for this pair")
        left, right = self._sides(n, m)
        if self.direction == "post":
            if f.dashed != g.rows or f.underlying != left:
                raise MoveError("pair is not (g + I) . C")
            return TracedMorphism(g.cols, right)
        if f.dashed != g.cols or f.underlying != right:
            raise MoveError("pair is not C . (g + I)")
        return TracedMorphism(g.rows, left)

    def inverse(self) -> "Slide":
        return Slide(self.g, self.cofactor, "pre" if self.direction == "post" else "post")

    def to_json(self) -> dict:
        return {"type": self.tag, "g": _matrix_json(self.g), "cofactor": _matrix_json(self.cofactor), "direction": self.direction}

    @classmethod
    def from_json(cls, obj):
        return cls(_matrix_unjson(obj["g"]), _matrix_unjson(obj["cofactor"]), obj["direction"])


def permutation_slide(f: TracedMorphism, perm) -> Slide:
    """The post-slide of the dashed permutation ``perm`` through ``f``.

    The cofactor is ``(P^-1 + I) . M``, so the result conjugates the dashed
    block of ``M`` by ``P``.
    """
    if len(perm) != f.dashed:
        raise MoveError(f"permutation of {len(perm)} wires for {f.dashed} dashed wires")
    sr = f.semiring
    g = permutation_matrix(perm, sr)
    g_inv = permutation_matrix(invert_perm(perm), sr)
    cof = mat_mul(mat_direct_sum(g_inv, _identity(f.n_out, sr)), f.underlying)
    return Slide(g, cof, "post")


@register_step("pair.expand")
@dataclass(frozen=True)
class Expand:
    """Add a leading dashed wire that carries the signal of input ``site`` around a loop.

    The new underlying matrix is ``Q_out . (M + I_1) . Q_in``: the old input at
    ``site`` now arrives through the new dashed wire, while the wire that used
    to feed it passes through the extra identity into the new dashed output.
    """

    site: int

    def apply(self, f: TracedMorphism) -> TracedMorphism:
        k, n, m = f.dashed, f.n_in, f.n_out
        if not 0 <= self.site < k + n:
            raise MoveError(f"expand site {self.site} out of range for {k + n} input wires")
        sr = f.semiring
        perm_in, perm_out = _expand_perms(k, n, m, self.site)
        u = route(mat_direct_sum(f.underlying, _identity(1, sr)), perm_in, perm_out)
        return TracedMorphism(k + 1, u)

    def inverse(self) -> "Contract":
        return Contract(self.site)

    def to_json(self) -> dict:
        return {"type": self.tag, "site": self.site}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["site"]))


@register_step("pair.contract")
@dataclass(frozen=True)
class Contract:
    """Inverse of :class:`Expand`; applies only on an exact pattern match."""

    site: int

    def match(self, f: TracedMorphism) -> Optional[TracedMorphism]:
        k, n, m = f.dashed - 1, f.n_in, f.n_out
        if k < 0 or not 0 <= self.site < k + n:
            return None
        perm_in, perm_out = _expand_perms(k, n, m, self.site)
        v = route(f.underlying, invert_perm(perm_in), invert_perm(perm_out))
        sr = f.semiring
        last_r, last_c = v.rows - 1, v.cols - 1
        for j in range(v.cols):
            if v[last_r, j] != (sr.one if j == last_c else sr.zero):
                return None
        for i in range(last_r):
            if v[i, last_c] != sr.zero:
                return None
        return TracedMorphism(k, v.block(0, last_r, 0, last_c))

    def apply(self, f: TracedMorphism) -> TracedMorphism:
        out = self.match(f)
        if out is None:
            raise MoveError(f"contract site {self.site} does not match the expansion pattern")
        return out

    def inverse(self) -> Expand:
        return Expand(self.site)

    def to_json(self) -> dict:
        return {"type": self.tag, "site": self.site}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["site"]))


@register_step("pair.permute")
@dataclass(frozen=True)
class PermuteDashed:
    """Relabel dashed wires: dashed wire ``j`` moves to position ``perm[j]``."""

    perm: tuple[int, ...]

    def apply(self, f: TracedMorphism) -> TracedMorphism:
        k = f.dashed
        if len(self.perm) != k or sorted(self.perm) != list(range(k)):
            raise MoveError(f"{list(self.perm)} is not a permutation of the {k} dashed wires")
        perm_in = list(self.perm) + list(range(k, k + f.n_in))
        perm_out = list(self.perm) + list(range(k, k + f.n_out))
        return TracedMorphism(k, route(f.underlying, invert_perm(perm_in), perm_out))

    def inverse(self) -> "PermuteDashed":
        return PermuteDashed(tuple(invert_perm(self.perm)))

    def to_json(self) -> dict:
        return {"type": self.tag, "perm": list(self.perm)}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(int(x) for x in obj["perm"]))


PairMove = Slide | Expand | Contract | PermuteDashed


def apply_move(f: TracedMorphism, move) -> TracedMorphism:
    return move.apply(f)


# -- bounded search ----------------------------------------------------


@dataclass(frozen=True)
class PairBudget:
    max_inner_dim: int = 3
    max_entry: int = 3
    max_dashed: int = 4
    max_steps: int = 4
    max_states: int = 20_000


def _entry_key(x) -> tuple:
    if isinstance(x, IntPoly):
        return (len(x.coeffs),) + x.coeffs
    return (1, int(x))


def _pair_key(f: TracedMorphism) -> tuple:
    return (f.dashed, f.underlying.rows, f.underlying.cols) + tuple(_entry_key(x) for x in f.underlying.entries)


def _canon_pair(f: TracedMorphism):
    """Canonical representative up to relabeling dashed wires (exhaustive for k <= 5)."""
    k = f.dashed
    if k <= 1 or k > 5:
        return _pair_key(f), [], f
    best = None
    for perm in itertools.permutations(range(k)):
        g = PermuteDashed(perm).apply(f)
        key = _pair_key(g)
        if best is None or key < best[0]:
            best = (key, perm, g)
    key, perm, g = best
    steps = [] if list(perm) == list(range(k)) else [PermuteDashed(perm)]
    return key, steps, g


def _split_t_power(block: SemiringMatrix):
    """Write a Z_+ or Z_+[t] block as ``t^e . A`` with ``A`` integer; ``None`` if impossible."""
    ents = block.entries
    if not ents:
        return 0, []
    if not isinstance(ents[0], IntPoly):
        return 0, [list(block.row(i)) for i in range(block.rows)]
    nz = [x for x in ents if not x.is_zero()]
    if not nz:
        return 0, [[0] * block.cols for _ in range(block.rows)]
    e = nz[0].low_order()
    if any(x.low_order() != e or x.degree != e for x in nz):
        return None
    return e, [[x.coeff(e) for x in block.row(i)] for i in range(block.rows)]


def _lift_block(rows, sr, t_power: int) -> SemiringMatrix:
    if sr.name in ("zplus", "z"):
        return SemiringMatrix.from_rows(rows, sr, cols=len(rows[0]) if rows else 0)
    mono = IntPoly.monomial(1, t_power)
    return SemiringMatrix(len(rows), len(rows[0]) if rows else 0, (mono * x for r in rows for x in r), sr)


def _slide_neighbors(f: TracedMorphism, budget: PairBudget):
    u, sr, k = f.underlying, f.semiring, f.dashed
    n, m = f.n_in, f.n_out
    if k == 0 or sr.name not in ("zplus", "zplus_t"):
        return
    # post: the first k rows of U factor as g . C_top
    top = u.block(0, k, 0, u.cols)
    split = _split_t_power(top)
    if split is not None:
        e, rows = split
        for r in range(1, min(budget.max_inner_dim, budget.max_dashed) + 1):
            for g_rows, c_rows in kernels.factorizations(rows, r, budget.max_entry):
                for g_pow, c_pow in ((e, 0), (0, e)) if e else ((0, 0),):
                    g = _lift_block([list(x) for x in g_rows], sr, g_pow)
                    c_top = _lift_block([list(x) for x in c_rows], sr, c_pow)
                    cof = SemiringMatrix(r + m, k + n, c_top.entries + u.block(k, u.rows, 0, u.cols).entries, sr)
                    mv = Slide(g, cof, "post")
                    yield [mv], mv.apply(f)
    # pre: the first k columns of U factor as C_left . g
    left = u.block(0, u.rows, 0, k)
    split = _split_t_power(left)
    if split is not None:
        e, rows = split
        for r in range(1, min(budget.max_inner_dim, budget.max_dashed) + 1):
            for c_rows, g_rows in kernels.factorizations(rows, r, budget.max_entry):
                for g_pow, c_pow in ((e, 0), (0, e)) if e else ((0, 0),):
                    g = _lift_block([list(x) for x in g_rows], sr, g_pow)
                    c_left = _lift_block([list(x) for x in c_rows], sr, c_pow)
                    right = u.block(0, u.rows, k, u.cols)
                    cof = SemiringMatrix(
                        k + m, r + n,
                        (x for i in range(k + m) for x in c_left.row(i) + right.row(i)),
                        sr,
                    )
                    mv = Slide(g, cof, "pre")
                    yield [mv], mv.apply(f)


def _pair_neighbors(budget: PairBudget):
    def neighbors(f: TracedMorphism):
        k, n = f.dashed, f.n_in
        for site in range(k):
            c = Contract(site)
            g = c.match(f)
            if g is not None:
                yield [c], g
        if k + 1 <= budget.max_dashed:
            for site in range(k + n):
                e = Expand(site)
                yield [e], e.apply(f)
        yield from _slide_neighbors(f, budget)

    return neighbors


def pair_equiv_bounded(f: TracedMorphism, g: TracedMorphism, budget: PairBudget = PairBudget(),
                       stats: SearchStats | None = None) -> Optional[MoveCertificate]:
    """Search for a move sequence from ``f`` to ``g``; ``None`` means unknown within budget."""
    if (f.n_in, f.n_out) != (g.n_in, g.n_out):
        raise DimensionError(f"arity mismatch: {f.n_in}->{f.n_out} vs {g.n_in}->{g.n_out}")
    if f.semiring.name != g.semiring.name:
        raise DimensionError("pairs live over different semirings")
    steps = bidirectional_search(
        f, g, _pair_neighbors(budget), _canon_pair, budget.max_steps, budget.max_states, stats
    )
    if steps is None:
        return None
    return MoveCertificate("pair", f, g, steps)
