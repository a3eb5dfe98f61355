"""Diagram terms over the bialgebra generators and their text grammar.

Grammar: parenthesized prefix terms ``(c f g ...)`` for composition
(``f`` after ``g``), ``(t f g ...)`` for tensor (``f`` on the top wires),
``(tr f)`` for trace, and atoms ``mu eta delta eps h id empty sigma``.
"""

from __future__ import annotations

import re
from importlib import resources
from dataclasses import dataclass
from typing import Union

GENERATOR_ARITY = {
    "mu": (2, 1),
    "eta": (0, 1),
    "delta": (1, 2),
    "eps": (1, 0),
    "h": (1, 1),
}


class ArityError(ValueError):
    def __init__(self, message: str, path: str = "root"):
        super().__init__(f"{path}: {message}")
        self.path = path


class DiagramParseError(ValueError):
    pass


@dataclass(frozen=True)
class Gen:
    name: str

    def __post_init__(self):
        if self.name not in GENERATOR_ARITY:
            raise ValueError(f"unknown generator {self.name!r}")


@dataclass(frozen=True)
class Id:
    pass


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Sym:
    pass


@dataclass(frozen=True)
class Compose:
    left: "Term"   # applied second
    right: "Term"  # applied first


@dataclass(frozen=True)
class Tensor:
    top: "Term"
    bottom: "Term"


@dataclass(frozen=True)
class Trace:
    inner: "Term"


Term = Union[Gen, Id, Empty, Sym, Compose, Tensor, Trace]

MU, ETA, DELTA, EPS, H = (Gen(n) for n in ("mu", "eta", "delta", "eps", "h"))
ID, EMPTY, SIGMA = Id(), Empty(), Sym()


def compose(*terms: Term) -> Term:
    """``compose(f, g, h)`` is ``f . g . h`` (``h`` applied first)."""
    if not terms:
        raise ValueError("compose needs at least one term")
    acc = terms[-1]
    for t in reversed(terms[:-1]):
        acc = Compose(t, acc)
    return acc


def tensor(*terms: Term) -> Term:
    if not terms:
        return EMPTY
    acc = terms[0]
    for t in terms[1:]:
        acc = Tensor(acc, t)
    return acc


def ids(n: int) -> Term:
    return tensor(*([ID] * n)) if n else EMPTY


def arity(term: Term, path: str = "root") -> tuple[int, int]:
    """``(inputs, outputs)`` of a term; raises :class:`ArityError` with the offending path."""
    if isinstance(term, Gen):
        return GENERATOR_ARITY[term.name]
    if isinstance(term, Id):
        return 1, 1
    if isinstance(term, Empty):
        return 0, 0
    if isinstance(term, Sym):
        return 2, 2
    if isinstance(term, Compose):
        li, lo = arity(term.left, path + ".0")
        ri, ro = arity(term.right, path + ".1")
        if ro != li:
            raise ArityError(f"compose: inner term has {ro} outputs but outer term takes {li} inputs", path)
        return ri, lo
    if isinstance(term, Tensor):
        ti, to = arity(term.top, path + ".0")
        bi, bo = arity(term.bottom, path + ".1")
        return ti + bi, to + bo
    if isinstance(term, Trace):
        i, o = arity(term.inner, path + ".0")
        if i < 1 or o < 1:
            raise ArityError("trace needs at least one input and one output", path)
        return i - 1, o - 1
    raise TypeError(f"not a diagram term: {term!r}")


def has_trace(term: Term) -> bool:
    if isinstance(term, Trace):
        return True
    if isinstance(term, Compose):
        return has_trace(term.left) or has_trace(term.right)
    if isinstance(term, Tensor):
        return has_trace(term.top) or has_trace(term.bottom)
    return False


def permutation_term(perm: list[int]) -> Term:
    """A term of ``sigma``/``id`` layers realizing the wire permutation ``j -> perm[j]``.

    Built by bubble sort, so every layer swaps one adjacent pair.
    """
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"invalid permutation {perm!r}")
    if n == 0:
        return EMPTY
    cur = list(perm)  # cur[position] = target of the wire now at position
    layers: list[Term] = []
    changed = True
    while changed:
        changed = False
        for k in range(n - 1):
            if cur[k] > cur[k + 1]:
                cur[k], cur[k + 1] = cur[k + 1], cur[k]
                layers.append(tensor(ids(k), SIGMA, ids(n - k - 2)) if n > 2 else SIGMA)
                changed = True
    if not layers:
        return ids(n)
    return compose(*reversed(layers))


# -- text grammar -------------------------------------------------------

_ATOMS = {"mu": MU, "eta": ETA, "delta": DELTA, "eps": EPS, "h": H, "id": ID, "empty": EMPTY, "sigma": SIGMA}
_WORD = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _tokenize(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch == ";":  # comment to end of line
            nl = text.find("\n", pos)
            pos = len(text) if nl < 0 else nl
        elif ch in "()":
            out.append((ch, pos))
            pos += 1
        else:
            m = _WORD.match(text, pos)
            if m is None:
                raise DiagramParseError(f"unexpected character {ch!r} at offset {pos}")
            out.append((m.group(0), pos))
            pos = m.end()
    return out


def parse_diagram(text: str) -> Term:
    """Parse a term and check its arities.

    Errors carry the term path: ``root.1.0`` is the first argument of the
    second argument of the outermost form.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise DiagramParseError("empty diagram")
    pos = 0

    def parse(path: str) -> tuple[Term, tuple[int, int]]:
        nonlocal pos
        if pos >= len(tokens):
            raise DiagramParseError(f"{path}: unexpected end of input")
        tok, off = tokens[pos]
        pos += 1
        if tok == ")":
            raise DiagramParseError(f"{path}: unexpected ')' at offset {off}")
        if tok != "(":
            if tok not in _ATOMS:
                raise DiagramParseError(f"{path}: unknown atom {tok!r} at offset {off}")
            term = _ATOMS[tok]
            return term, arity(term, path)
        if pos >= len(tokens) or tokens[pos][0] in "()":
            raise DiagramParseError(f"{path}: expected an operator after '(' at offset {off}")
        head, hoff = tokens[pos]
        pos += 1
        args = []
        while pos < len(tokens) and tokens[pos][0] != ")":
            args.append(parse(f"{path}.{len(args)}"))
        if pos >= len(tokens):
            raise DiagramParseError(f"{path}: missing ')' for form at offset {off}")
        pos += 1
        if head == "c":
            if not args:
                raise DiagramParseError(f"{path}: (c ...) needs arguments")
            for k in range(len(args) - 1):
                outer_in = args[k][1][0]
                inner_out = args[k + 1][1][1]
                if outer_in != inner_out:
                    raise ArityError(
                        f"compose: argument {k + 1} has {inner_out} outputs but argument {k} takes {outer_in} inputs",
                        path,
                    )
            return compose(*(a[0] for a in args)), (args[-1][1][0], args[0][1][1])
        if head == "t":
            return tensor(*(a[0] for a in args)), (sum(a[1][0] for a in args), sum(a[1][1] for a in args))
        if head == "tr":
            if len(args) != 1:
                raise DiagramParseError(f"{path}: (tr ...) takes exactly one argument")
            i, o = args[0][1]
            if i < 1 or o < 1:
                raise ArityError("trace needs at least one input and one output", path)
            return Trace(args[0][0]), (i - 1, o - 1)
        raise DiagramParseError(f"{path}: unknown operator {head!r} at offset {hoff}")

    term, _ = parse("root")
    if pos != len(tokens):
        raise DiagramParseError(f"trailing input at offset {tokens[pos][1]}")
    return term


def render_diagram(term: Term) -> str:
    if isinstance(term, Gen):
        return term.name
    if isinstance(term, Id):
        return "id"
    if isinstance(term, Empty):
        return "empty"
    if isinstance(term, Sym):
        return "sigma"
    if isinstance(term, Compose):
        return f"(c {render_diagram(term.left)} {render_diagram(term.right)})"
    if isinstance(term, Tensor):
        return f"(t {render_diagram(term.top)} {render_diagram(term.bottom)})"
    if isinstance(term, Trace):
        return f"(tr {render_diagram(term.inner)})"
    raise TypeError(term)


def worked_example() -> Term:
    """The bundled five-input, four-output term with ``h`` boxes (``data/worked_example.diag``)."""
    text = resources.files("sftprop").joinpath("data", "worked_example.diag").read_text(encoding="utf-8")
    return parse_diagram(text)
