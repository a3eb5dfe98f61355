"""Commutative semirings used as matrix coefficients.

Each semiring is a :class:`SemiringSpec` value carrying its operations;
elements are plain Python objects (``int``, :class:`IntPoly`, :class:`NatInf`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Optional

from .poly import IntPoly


class NatInf:
    """Element of the complete semiring of nonnegative integers with infinity."""

    __slots__ = ("value",)

    def __init__(self, value: Optional[int]):
        if value is not None and (not isinstance(value, int) or value < 0):
            raise ValueError(f"NatInf needs a nonnegative int or None, got {value!r}")
        self.value = value  # None encodes infinity

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: NatInf) -> NatInf:
        other = _natinf(other)
        if self.value is None or other.value is None:
            return INF
        return NatInf(self.value + other.value)

    __radd__ = __add__

    def __mul__(self, other: NatInf) -> NatInf:
        other = _natinf(other)
        # 0 * inf = 0 in both orders
        if self.value == 0 or other.value == 0:
            return ZERO_NI
        if self.value is None or other.value is None:
            return INF
        return NatInf(self.value * other.value)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, NatInf):
            return self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("NatInf", self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        if self.value is None:
            raise OverflowError("cannot convert infinity to int")
        return self.value

    def __str__(self) -> str:
        return "inf" if self.value is None else str(self.value)

    def __repr__(self) -> str:
        return f"NatInf({self.value!r})"


def _natinf(x) -> NatInf:
    if isinstance(x, NatInf):
        return x
    return NatInf(x)


INF = NatInf(None)
ZERO_NI = NatInf(0)
ONE_NI = NatInf(1)


@dataclass(frozen=True)
class SemiringSpec:
    """Operations of a commutative semiring.

    ``neg`` is set only for rings. ``contains`` validates elements,
    ``coerce`` maps ints (and strings via ``parse``) into the carrier.
    """

    name: str
    zero: Any
    one: Any
    add: Callable[[Any, Any], Any] = field(compare=False)
    mul: Callable[[Any, Any], Any] = field(compare=False)
    contains: Callable[[Any], bool] = field(compare=False)
    coerce: Callable[[Any], Any] = field(compare=False)
    render: Callable[[Any], str] = field(compare=False, default=str)
    parse: Optional[Callable[[str], Any]] = field(compare=False, default=None)
    neg: Optional[Callable[[Any], Any]] = field(compare=False, default=None)
    is_complete: bool = False

    @property
    def is_ring(self) -> bool:
        return self.neg is not None

    def sub(self, a, b):
        if self.neg is None:
            raise TypeError(f"{self.name} has no subtraction")
        return self.add(a, self.neg(b))

    def sum(self, items):
        acc = self.zero
        for x in items:
            acc = self.add(acc, x)
        return acc

    def is_zero(self, x) -> bool:
        return x == self.zero

    def __repr__(self) -> str:
        return f"SemiringSpec({self.name!r})"


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _coerce_int(x) -> int:
    if isinstance(x, IntPoly):
        if not x.is_constant():
            raise ValueError(f"{x} is not a constant")
        return x.constant
    if isinstance(x, NatInf):
        return int(x)
    if not _is_int(x):
        raise TypeError(f"not an integer: {x!r}")
    return x


def _coerce_nonneg(x) -> int:
    v = _coerce_int(x)
    if v < 0:
        raise ValueError(f"negative entry {v} in a nonnegative semiring")
    return v


def _parse_int(text: str) -> int:
    return int(text.strip())


def _add(a, b):
    return a + b


def _mul(a, b):
    return a * b


def _neg(a):
    return -a


def _render_compact(p: IntPoly) -> str:
    return p.render(ascending=False, star=False, spaces=False)


def _coerce_poly(x) -> IntPoly:
    if isinstance(x, NatInf):
        return IntPoly.const(int(x))
    return IntPoly.lift(x)


def _coerce_poly_nonneg(x) -> IntPoly:
    p = _coerce_poly(x)
    if not p.is_nonnegative():
        raise ValueError(f"{p} has a negative coefficient")
    return p


ZPLUS = SemiringSpec(
    name="zplus",
    zero=0,
    one=1,
    add=_add,
    mul=_mul,
    contains=lambda x: _is_int(x) and x >= 0,
    coerce=_coerce_nonneg,
    parse=lambda s: _coerce_nonneg(_parse_int(s)),
)

Z = SemiringSpec(
    name="z",
    zero=0,
    one=1,
    add=_add,
    mul=_mul,
    contains=_is_int,
    coerce=_coerce_int,
    parse=_parse_int,
    neg=_neg,
)

ZPLUS_T = SemiringSpec(
    name="zplus_t",
    zero=IntPoly(),
    one=IntPoly.const(1),
    add=_add,
    mul=_mul,
    contains=lambda x: isinstance(x, IntPoly) and x.is_nonnegative(),
    coerce=_coerce_poly_nonneg,
    render=_render_compact,
    parse=lambda s: _coerce_poly_nonneg(IntPoly.parse(s)),
)

Z_T = SemiringSpec(
    name="z_t",
    zero=IntPoly(),
    one=IntPoly.const(1),
    add=_add,
    mul=_mul,
    contains=lambda x: isinstance(x, IntPoly),
    coerce=_coerce_poly,
    render=_render_compact,
    parse=IntPoly.parse,
    neg=_neg,
)


def _parse_natinf(s: str) -> NatInf:
    s = s.strip()
    return INF if s in ("inf", "oo") else NatInf(_coerce_nonneg(int(s)))


NATINF = SemiringSpec(
    name="natinf",
    zero=ZERO_NI,
    one=ONE_NI,
    add=_add,
    mul=_mul,
    contains=lambda x: isinstance(x, NatInf),
    coerce=lambda x: x if isinstance(x, NatInf) else NatInf(_coerce_nonneg(x)),
    parse=_parse_natinf,
    is_complete=True,
)


@lru_cache(maxsize=None)
def finite_field(p: int) -> SemiringSpec:
    """The prime field F_p with elements ``0..p-1``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return SemiringSpec(
        name=f"fp:{p}",
        zero=0,
        one=1 % p,
        add=lambda a, b: (a + b) % p,
        mul=lambda a, b: (a * b) % p,
        contains=lambda x: _is_int(x) and 0 <= x < p,
        coerce=lambda x: _coerce_int(x) % p,
        parse=lambda s: _parse_int(s) % p,
        neg=lambda a: (-a) % p,
    )


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def by_name(name: str) -> SemiringSpec:
    """Look up a semiring by its CLI name (``zplus``, ``z``, ``zplus_t``, ``z_t``, ``fp:<p>``, ``natinf``)."""
    table = {s.name: s for s in (ZPLUS, Z, ZPLUS_T, Z_T, NATINF)}
    if name in table:
        return table[name]
    if name.startswith("fp:"):
        try:
            return finite_field(int(name[3:]))
        except ValueError as exc:
            raise ValueError(f"bad field modulus in {name!r}: {exc}") from None
    raise ValueError(f"unknown semiring {name!r}")


def polynomial_ring_for(sr: SemiringSpec) -> SemiringSpec:
    """The polynomial semiring over Z_+ or Z matching ``sr``."""
    if sr.name in ("zplus", "zplus_t"):
        return ZPLUS_T
    if sr.name in ("z", "z_t"):
        return Z_T
    raise ValueError(f"no polynomial extension registered for {sr.name}")


REGISTERED = (ZPLUS, Z, ZPLUS_T, Z_T, NATINF)
