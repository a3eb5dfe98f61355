"""Move systems on square matrices and bounded searches that emit certificates.

Three relations are covered: elementary strong shift equivalence (``RS ~ SR``),
flow equivalence (factor moves plus row expansion), and positive equivalence
of ``I - M`` over Z_+[t] by elementary row and column operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import kernels
from .algebra import (
    ZPLUS,
    ZPLUS_T,
    DimensionError,
    IntPoly,
    SemiringMatrix,
    T,
    conjugate,
    invert_perm,
    mat_mul,
    permutation_matrix,
)
from .certificate import (
    MoveCertificate,
    MoveError,
    SearchStats,
    bidirectional_search,
    register_step,
    step_from_json,
)
from .io import matrix_from_json, matrix_to_json

CERT_SCHEMA = 1


@dataclass(frozen=True)
class SearchBudget:
    max_inner_dim: int = 4
    max_entry: int = 3
    max_size: int = 6
    max_steps: int = 4
    max_states: int = 20_000

    def __post_init__(self):
        for name in ("max_inner_dim", "max_entry", "max_size", "max_states"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        if self.max_steps < 0:
            raise ValueError("max_steps must be nonnegative")

    def to_json(self) -> dict:
        return {
            "max_inner_dim": self.max_inner_dim,
            "max_entry": self.max_entry,
            "max_size": self.max_size,
            "max_steps": self.max_steps,
            "max_states": self.max_states,
        }


def _require_square(*mats: SemiringMatrix) -> None:
    for m in mats:
        if not m.is_square:
            raise DimensionError(f"expected a square matrix, got {m.rows}x{m.cols}")


def _require_zplus(*mats: SemiringMatrix) -> None:
    _require_square(*mats)
    for m in mats:
        if m.semiring.name != "zplus":
            raise ValueError(f"expected a matrix over zplus, got {m.semiring.name}")


# -- canonical forms up to simultaneous permutation ------------------------


def _sig(m: SemiringMatrix, i: int) -> tuple:
    row, col = m.row(i), m.col(i)
    key = lambda x: (len(x.coeffs),) + x.coeffs if isinstance(x, IntPoly) else (1, x)  # noqa: E731
    return (key(m[i, i]), tuple(sorted(map(key, row))), tuple(sorted(map(key, col))))


def canonical_conjugate(m: SemiringMatrix) -> tuple[tuple, tuple[int, ...], SemiringMatrix]:
    """Least conjugate of ``m`` by a permutation, with the permutation used.

    Only permutations that sort a per-index signature are tried, so the
    result is canonical while ties alone drive the enumeration.
    """
    n = m.rows
    sigs = [_sig(m, i) for i in range(n)]
    order = sorted(range(n), key=lambda i: sigs[i])
    classes: list[list[int]] = []
    for i in order:
        if classes and sigs[classes[-1][0]] == sigs[i]:
            classes[-1].append(i)
        else:
            classes.append([i])
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
        seq = [i for part in choice for i in part]  # seq[new] = old
        perm = tuple(invert_perm(seq))  # old index -> new position
        c = conjugate(m, perm)
        key = (n,) + c.key()
        if best is None or key < best[0]:
            best = (key, perm, c)
    if best is None:
        return (0,), (), m
    return best


# -- elementary steps ------------------------------------------------------


@register_step("sse.factor")
@dataclass(frozen=True)
class SseStep:
    """``R S -> S R`` (forward) or ``S R -> R S`` (backward)."""

    R: SemiringMatrix
    S: SemiringMatrix
    direction: str = "forward"

    def __post_init__(self):
        if self.direction not in ("forward", "backward"):
            raise ValueError(f"bad direction {self.direction!r}")
        if self.R.cols != self.S.rows or self.S.cols != self.R.rows:
            raise DimensionError(f"R is {self.R.rows}x{self.R.cols} but S is {self.S.rows}x{self.S.cols}")

    @property
    def source(self) -> SemiringMatrix:
        return mat_mul(self.R, self.S) if self.direction == "forward" else mat_mul(self.S, self.R)

    @property
    def target(self) -> SemiringMatrix:
        return mat_mul(self.S, self.R) if self.direction == "forward" else mat_mul(self.R, self.S)

    def apply(self, m: SemiringMatrix) -> SemiringMatrix:
        if m != self.source:
            raise MoveError("matrix is not the product the step factors")
        return self.target

    def inverse(self) -> SseStep:
        return SseStep(self.R, self.S, "backward" if self.direction == "forward" else "forward")

    def to_json(self) -> dict:
        return {"type": self.tag, "R": matrix_to_json(self.R), "S": matrix_to_json(self.S), "direction": self.direction}

    @classmethod
    def from_json(cls, obj) -> SseStep:
        return cls(matrix_from_json(obj["R"]), matrix_from_json(obj["S"]), obj.get("direction", "forward"))


def permutation_step(m: SemiringMatrix, perm: Sequence[int]) -> SseStep:
    """Conjugation ``m -> P m P^-1`` as an elementary step with ``R = m P^-1``, ``S = P``."""
    p = permutation_matrix(perm, m.semiring)
    p_inv = permutation_matrix(invert_perm(perm), m.semiring)
    return SseStep(mat_mul(m, p_inv), p)


def lift_to_polynomial(step: SseStep) -> SseStep:
    """``(R, S)`` on ``(M, N)`` becomes ``(tR, S)`` on ``(tM, tN)`` over Z_+[t]."""
    tr = step.R.map(lambda x: T * x, ZPLUS_T)
    s = step.S.with_semiring(ZPLUS_T)
    return SseStep(tr, s, step.direction)


def times_t(m: SemiringMatrix) -> SemiringMatrix:
    return m.map(lambda x: T * x, ZPLUS_T)


@register_step("flow.expand_row")
@dataclass(frozen=True)
class ExpandRow:
    """Row expansion at a 1-based row (see :func:`ps_expand`)."""

    row: int

    def apply(self, m: SemiringMatrix) -> SemiringMatrix:
        try:
            return ps_expand(m, self.row)
        except (IndexError, DimensionError) as exc:
            raise MoveError(str(exc)) from None

    def inverse(self) -> ContractRow:
        return ContractRow(self.row)

    def to_json(self) -> dict:
        return {"type": self.tag, "row": self.row}

    @classmethod
    def from_json(cls, obj) -> ExpandRow:
        return cls(int(obj["row"]))


@register_step("flow.contract_row")
@dataclass(frozen=True)
class ContractRow:
    """Inverse of :class:`ExpandRow`; the input must match the expansion pattern exactly."""

    row: int

    def apply(self, m: SemiringMatrix) -> SemiringMatrix:
        out = ps_contract(m, self.row)
        if out is None:
            raise MoveError(f"matrix does not match the expansion pattern for row {self.row}")
        return out

    def inverse(self) -> ExpandRow:
        return ExpandRow(self.row)

    def to_json(self) -> dict:
        return {"type": self.tag, "row": self.row}

    @classmethod
    def from_json(cls, obj) -> ContractRow:
        return cls(int(obj["row"]))


@register_step("flow.permute")
@dataclass(frozen=True)
class Permute:
    """Simultaneous relabeling: index ``j`` moves to ``perm[j]``."""

    perm: tuple[int, ...]

    def apply(self, m: SemiringMatrix) -> SemiringMatrix:
        if not m.is_square or sorted(self.perm) != list(range(m.rows)):
            raise MoveError(f"{list(self.perm)} is not a permutation of {m.rows} indices")
        return conjugate(m, self.perm)

    def inverse(self) -> Permute:
        return Permute(tuple(invert_perm(self.perm)))

    def to_json(self) -> dict:
        return {"type": self.tag, "perm": list(self.perm)}

    @classmethod
    def from_json(cls, obj) -> Permute:
        return cls(tuple(int(x) for x in obj["perm"]))


FlowStep = SseStep | ExpandRow | ContractRow | Permute


def _transposition(n: int, i: int) -> list[int]:
    perm = list(range(n))
    perm[0], perm[i] = perm[i], perm[0]
    return perm


def ps_expand(m: SemiringMatrix, row: int) -> SemiringMatrix:
    """Split the 1-based ``row`` through a fresh state.

    With the chosen row moved to the front, ``m = (a; A)`` becomes
    ``[[0, 1], [A, 0], [a, 0]]`` with the new index last.
    """
    _require_square(m)
    n = m.rows
    if n < 1:
        raise DimensionError("row expansion needs a nonempty matrix")
    if not 1 <= row <= n:
        raise IndexError(f"row {row} out of range 1..{n}")
    sr = m.semiring
    m1 = conjugate(m, _transposition(n, row - 1))
    z, o = sr.zero, sr.one
    rows = [[z] * n + [o]]
    rows += [list(m1.row(i)) + [z] for i in range(1, n)]
    rows.append(list(m1.row(0)) + [z])
    return SemiringMatrix.from_rows(rows, sr)


def ps_contract(m: SemiringMatrix, row: int) -> Optional[SemiringMatrix]:
    """Inverse of ``ps_expand(., row)``, or ``None`` when ``m`` is not in the pattern."""
    if not m.is_square or m.rows < 2:
        return None
    n = m.rows - 1
    if not 1 <= row <= n:
        return None
    sr = m.semiring
    if any(m[0, j] != (sr.one if j == n else sr.zero) for j in range(n + 1)):
        return None
    if any(m[i, n] != sr.zero for i in range(1, n + 1)):
        return None
    rows = [list(m.row(n))[:n]] + [list(m.row(i))[:n] for i in range(1, n)]
    m1 = SemiringMatrix.from_rows(rows, sr)
    return conjugate(m1, _transposition(n, row - 1))


def contraction_sites(m: SemiringMatrix) -> list[tuple[int, int]]:
    """Pairs ``(i, j)``, ``i != j``, with row ``i`` the unit vector ``e_j`` and column ``j`` equal to ``e_i``."""
    sr = m.semiring
    out = []
    n = m.rows
    for i in range(n):
        ones = [j for j in range(n) if m[i, j] != sr.zero]
        if len(ones) != 1 or m[i, ones[0]] != sr.one:
            continue
        j = ones[0]
        if j == i:
            continue
        if all(m[k, j] == sr.zero for k in range(n) if k != i):
            out.append((i, j))
    return out


# -- positive equivalence ---------------------------------------------------


@register_step("positive.op")
@dataclass(frozen=True)
class PositiveStep:
    """Elementary operation on ``I - M`` over Z_+[t].

    ``row_add``: row ``dst`` of ``I - M`` gains ``multiplier`` times row ``src``;
    ``col_add``: likewise for columns; ``stabilize``: ``I - M`` gains a
    diagonal 1 as the last row and column. Backward undoes the forward move.
    """

    kind: str
    src: int = 0
    dst: int = 0
    multiplier: IntPoly = IntPoly.const(0)
    direction: str = "forward"

    def apply(self, m: SemiringMatrix) -> SemiringMatrix:
        return positive_step_apply(m, self)

    def inverse(self) -> PositiveStep:
        return PositiveStep(self.kind, self.src, self.dst, self.multiplier,
                            "backward" if self.direction == "forward" else "forward")

    def to_json(self) -> dict:
        return {
            "type": self.tag,
            "kind": self.kind,
            "src": self.src,
            "dst": self.dst,
            "multiplier": self.multiplier.render(ascending=False),
            "direction": self.direction,
        }

    @classmethod
    def from_json(cls, obj) -> PositiveStep:
        return cls(obj["kind"], int(obj.get("src", 0)), int(obj.get("dst", 0)),
                   IntPoly.parse(str(obj.get("multiplier", "0"))), obj.get("direction", "forward"))


def positive_step_apply(m: SemiringMatrix, step: PositiveStep) -> SemiringMatrix:
    """Return ``M'`` with ``I - M' = E (I - M)`` (rows) or ``(I - M) E`` (columns)."""
    _require_square(m)
    if m.semiring.name not in ("zplus_t", "zplus"):
        raise ValueError("positive moves act on Z_+ or Z_+[t] matrices")
    m = m.with_semiring(ZPLUS_T)
    n = m.rows
    if step.direction not in ("forward", "backward"):
        raise MoveError(f"bad direction {step.direction!r}")
    if step.kind == "stabilize":
        if step.direction == "forward":
            rows = [list(m.row(i)) + [IntPoly.const(0)] for i in range(n)]
            rows.append([IntPoly.const(0)] * (n + 1))
            return SemiringMatrix.from_rows(rows, ZPLUS_T)
        if n < 1 or any(not m[n - 1, j].is_zero() or not m[j, n - 1].is_zero() for j in range(n)):
            raise MoveError("last row and column are not zero; cannot destabilize")
        return m.block(0, n - 1, 0, n - 1)
    if step.kind not in ("row_add", "col_add"):
        raise MoveError(f"unknown positive move {step.kind!r}")
    i, j = step.src, step.dst
    if not (0 <= i < n and 0 <= j < n) or i == j:
        raise MoveError(f"bad indices {i} -> {j} for size {n}")
    c = step.multiplier if step.direction == "forward" else -step.multiplier
    entries = [list(m.row(r)) for r in range(n)]
    if step.kind == "row_add":
        # row j of I - M' is row j + c * row i of I - M
        for k in range(n):
            entries[j][k] = m[j, k] + c * m[i, k] - (c if k == i else 0)
    else:
        for k in range(n):
            entries[k][j] = m[k, j] + c * m[k, i] - (c if k == i else 0)
    for r in entries:
        for x in r:
            if not x.is_nonnegative():
                raise MoveError(f"entry {x} leaves Z_+[t]")
    return SemiringMatrix.from_rows(entries, ZPLUS_T)


# -- searches ---------------------------------------------------------------


def _rows(m: SemiringMatrix) -> list[list[int]]:
    return [[int(x) for x in m.row(i)] for i in range(m.rows)]


def _factor_pairs(m: SemiringMatrix, budget: SearchBudget) -> Iterator[tuple[SemiringMatrix, SemiringMatrix]]:
    rows = _rows(m)
    for r in range(1, budget.max_inner_dim + 1):
        for r_rows, s_rows in kernels.factorizations(rows, r, budget.max_entry, budget.max_states):
            R = SemiringMatrix.from_rows([list(x) for x in r_rows], ZPLUS, cols=r)
            S = SemiringMatrix.from_rows([list(x) for x in s_rows], ZPLUS, cols=m.rows)
            yield R, S


def _find_conjugating(a: SemiringMatrix, b: SemiringMatrix) -> Optional[tuple[int, ...]]:
    """A permutation ``p`` with ``conjugate(a, p) == b``, if any."""
    if a.shape != b.shape:
        return None
    ka, pa, _ = canonical_conjugate(a)
    kb, pb, _ = canonical_conjugate(b)
    if ka != kb:
        return None
    # a -> canon by pa, b -> canon by pb, so a -> b by pb^-1 . pa
    inv_b = invert_perm(pb)
    return tuple(inv_b[pa[j]] for j in range(a.rows))


def elementary_sse(m: SemiringMatrix, n: SemiringMatrix, budget: SearchBudget = SearchBudget()) -> Optional[SseStep]:
    """First ``(R, S)`` in enumeration order with ``m = RS`` and ``n = SR``."""
    _require_zplus(m, n)
    if m == n:
        return SseStep(m, SemiringMatrix.identity(m.rows, ZPLUS))
    for R, S in _factor_pairs(m, budget):
        if S.rows != n.rows:
            continue
        sr = mat_mul(S, R)
        p = _find_conjugating(sr, n)
        if p is None:
            continue
        # relabel the inner dimension so that S R is exactly n
        P = permutation_matrix(p, ZPLUS)
        Pinv = permutation_matrix(invert_perm(p), ZPLUS)
        step = SseStep(mat_mul(R, Pinv), mat_mul(P, S))
        assert step.target == n
        return step
    return None


def _canon_sse(m: SemiringMatrix):
    key, perm, c = canonical_conjugate(m)
    steps = [] if list(perm) == list(range(m.rows)) else [permutation_step(m, perm)]
    return key, steps, c


def _canon_flow(m: SemiringMatrix):
    key, perm, c = canonical_conjugate(m)
    steps = [] if list(perm) == list(range(m.rows)) else [Permute(tuple(perm))]
    return key, steps, c


def _within(m: SemiringMatrix, budget: SearchBudget) -> bool:
    return 1 <= m.rows <= budget.max_size


def _sse_neighbors(budget: SearchBudget):
    def neighbors(m: SemiringMatrix):
        for R, S in _factor_pairs(m, budget):
            nxt = mat_mul(S, R)
            if _within(nxt, budget):
                yield [SseStep(R, S)], nxt

    return neighbors


def _flow_neighbors(budget: SearchBudget):
    sse = _sse_neighbors(budget)

    def neighbors(m: SemiringMatrix):
        n = m.rows
        for i, j in contraction_sites(m):
            # bring i to the front and j to the back, keeping the others in order
            rest = [k for k in range(n) if k not in (i, j)]
            seq = [i] + rest + [j]
            perm = tuple(invert_perm(seq))
            pm = Permute(perm)
            moved = pm.apply(m)
            out = ps_contract(moved, 1)
            if out is not None:
                steps = ([pm] if list(perm) != list(range(n)) else []) + [ContractRow(1)]
                yield steps, out
        if n + 1 <= budget.max_size:
            for row in range(1, n + 1):
                yield [ExpandRow(row)], ps_expand(m, row)
        yield from sse(m)

    return neighbors


def merge_permutes(steps: list) -> list:
    """Fuse runs of :class:`Permute` steps and drop identities."""
    out: list = []
    for s in steps:
        if isinstance(s, Permute) and out and isinstance(out[-1], Permute):
            prev = out.pop()
            s = Permute(tuple(s.perm[prev.perm[j]] for j in range(len(prev.perm))))
        if isinstance(s, Permute) and list(s.perm) == list(range(len(s.perm))):
            continue
        out.append(s)
    return out


def sse_search(m: SemiringMatrix, n: SemiringMatrix, budget: SearchBudget = SearchBudget(),
               stats: Optional[SearchStats] = None) -> Optional[MoveCertificate]:
    """Bounded bidirectional search for a path of elementary SSE steps."""
    _require_zplus(m, n)
    if m == n:
        return MoveCertificate("sse", m, n, [])
    step = elementary_sse(m, n, budget) if budget.max_steps >= 1 else None
    if step is not None:
        return MoveCertificate("sse", m, n, [step])
    path = bidirectional_search(m, n, _sse_neighbors(budget), _canon_sse, budget.max_steps, budget.max_states, stats)
    return None if path is None else MoveCertificate("sse", m, n, path)


def _one_flow_move(m: SemiringMatrix, n: SemiringMatrix, budget: SearchBudget):
    """A single expansion, contraction or factor step from ``m`` to ``n``, if one exists."""
    if n.rows == m.rows + 1:
        for row in range(1, m.rows + 1):
            if ps_expand(m, row) == n:
                return ExpandRow(row)
    if m.rows == n.rows + 1:
        for row in range(1, n.rows + 1):
            if ps_contract(m, row) == n:
                return ContractRow(row)
    return elementary_sse(m, n, budget)


def flow_search(m: SemiringMatrix, n: SemiringMatrix, budget: SearchBudget = SearchBudget(),
                stats: Optional[SearchStats] = None) -> Optional[MoveCertificate]:
    """Bounded search over factor, row-expansion, contraction and permutation moves.

    Falls back to :func:`sse_search` under the same budget, so every SSE
    success is also a flow success.
    """
    _require_zplus(m, n)
    if m == n:
        return MoveCertificate("flow", m, n, [])
    if budget.max_steps >= 1:
        direct = _one_flow_move(m, n, budget)
        if direct is not None:
            return MoveCertificate("flow", m, n, [direct])
    stats = stats if stats is not None else SearchStats()
    path = bidirectional_search(m, n, _flow_neighbors(budget), _canon_flow, budget.max_steps, budget.max_states, stats)
    if path is not None:
        return MoveCertificate("flow", m, n, merge_permutes(path))
    cert = sse_search(m, n, budget)
    if cert is not None:
        return MoveCertificate("flow", m, n, cert.steps)
    return None


# -- certificate (de)serialization ------------------------------------------


def _endpoint_to_json(x) -> dict:
    from .prop.traced import TracedMorphism

    if isinstance(x, TracedMorphism):
        return {"dashed": x.dashed, "underlying": matrix_to_json(x.underlying)}
    return matrix_to_json(x)


def _endpoint_from_json(obj: dict):
    from .prop.traced import TracedMorphism

    if "dashed" in obj:
        return TracedMorphism(int(obj["dashed"]), matrix_from_json(obj["underlying"]))
    return matrix_from_json(obj)


def certificate_to_json(cert: MoveCertificate) -> dict:
    return {
        "schema": CERT_SCHEMA,
        "relation": cert.relation,
        "source": _endpoint_to_json(cert.source),
        "target": _endpoint_to_json(cert.target),
        "steps": [s.to_json() for s in cert.steps],
    }


def certificate_from_json(obj: dict) -> MoveCertificate:
    if obj.get("schema") != CERT_SCHEMA:
        raise ValueError(f"unsupported certificate schema {obj.get('schema')!r}")
    return MoveCertificate(
        obj["relation"],
        _endpoint_from_json(obj["source"]),
        _endpoint_from_json(obj["target"]),
        [step_from_json(s) for s in obj["steps"]],
    )
