"""Univariate integer polynomials in the indeterminate ``t``."""

from __future__ import annotations

import re
from typing import Iterable, Union

Coefficient = int
PolyLike = Union["IntPoly", int]

_TERM_RE = re.compile(
    r"""
    (?P<sign>[+-])?
    (?:
        (?P<coef>\d+)\*?(?P<var1>t)(?:\^(?P<exp1>\d+))?
      | (?P<var2>t)(?:\^(?P<exp2>\d+))?
      | (?P<const>\d+)
    )
    """,
    re.VERBOSE,
)


class IntPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients.

    ``coeffs[i]`` is the coefficient of ``t**i``; trailing zeros are trimmed,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[int, ...] = tuple(c)
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, value: int) -> IntPoly:
        return cls((value,))

    @classmethod
    def monomial(cls, coef: int, exp: int) -> IntPoly:
        if exp < 0:
            raise ValueError("negative exponent")
        return cls([0] * exp + [coef])

    @classmethod
    def lift(cls, value: PolyLike) -> IntPoly:
        if isinstance(value, IntPoly):
            return value
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot lift {value!r} to IntPoly")
        return cls((value,))

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        """Parse ``2t^2+t``, ``1 - 2*t``, ``-3`` and similar forms."""
        if re.search(r"[0-9t]\s+[0-9t^]", text):
            raise ValueError(f"missing operator in {text!r}")
        s = re.sub(r"\s+", "", text)
        if not s:
            raise ValueError("empty polynomial")
        pos = 0
        coeffs: dict[int, int] = {}
        first = True
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            if m is None or m.end() == pos:
                raise ValueError(f"bad polynomial {text!r} at offset {pos}")
            if not first and m.group("sign") is None:
                raise ValueError(f"missing operator in {text!r} at offset {pos}")
            first = False
            sign = -1 if m.group("sign") == "-" else 1
            if m.group("const") is not None:
                c, e = int(m.group("const")), 0
            elif m.group("var1") is not None:
                c = int(m.group("coef"))
                e = int(m.group("exp1") or 1)
            else:
                c = 1
                e = int(m.group("exp2") or 1)
            coeffs[e] = coeffs.get(e, 0) + sign * c
            pos = m.end()
        top = max(coeffs) if coeffs else -1
        return cls(coeffs.get(i, 0) for i in range(top + 1))

    # -- queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    @property
    def constant(self) -> int:
        return self.coeff(0)

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def low_order(self) -> int:
        """Largest ``e`` with ``t**e`` dividing the polynomial (``-1`` for zero)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return -1

    def shift_down(self, e: int) -> IntPoly:
        """Divide by ``t**e``; the low coefficients must vanish."""
        if any(self.coeffs[:e]):
            raise ArithmeticError(f"t^{e} does not divide {self}")
        return IntPoly(self.coeffs[e:])

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: PolyLike) -> IntPoly:
        o = IntPoly.lift(other).coeffs
        a = self.coeffs
        n = max(len(a), len(o))
        return IntPoly(
            (a[i] if i < len(a) else 0) + (o[i] if i < len(o) else 0) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: PolyLike) -> IntPoly:
        return self + (-IntPoly.lift(other))

    def __rsub__(self, other: PolyLike) -> IntPoly:
        return IntPoly.lift(other) - self

    def __mul__(self, other: PolyLike) -> IntPoly:
        o = IntPoly.lift(other).coeffs
        a = self.coeffs
        if not a or not o:
            return IntPoly()
        out = [0] * (len(a) + len(o) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(o):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative power")
        result, base = IntPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: PolyLike) -> IntPoly:
        """Quotient of an exact division over Z; raises ArithmeticError otherwise."""
        d = IntPoly.lift(other)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dc = d.coeffs
        lead = dc[-1]
        if len(rem) < len(dc):
            if rem:
                raise ArithmeticError(f"{d} does not divide {self}")
            return IntPoly()
        quot = [0] * (len(rem) - len(dc) + 1)
        for k in range(len(quot) - 1, -1, -1):
            top = rem[k + len(dc) - 1]
            if top % lead:
                raise ArithmeticError(f"{d} does not divide {self}")
            q = top // lead
            quot[k] = q
            if q:
                for j, c in enumerate(dc):
                    rem[k + j] -= q * c
        if any(rem):
            raise ArithmeticError(f"{d} does not divide {self}")
        return IntPoly(quot)

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self.coeffs == IntPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("IntPoly", self.coeffs))
        return self._hash

    def __lt__(self, other: IntPoly) -> bool:
        # Arbitrary but total order, used only for deterministic sorting.
        o = IntPoly.lift(other)
        return (len(self.coeffs), self.coeffs[::-1]) < (len(o.coeffs), o.coeffs[::-1])

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- rendering ----------------------------------------------------
    def render(self, ascending: bool = True, star: bool = True, spaces: bool = True) -> str:
        """Canonical text form, e.g. ``1 - t - t^2`` or ``t^2 - t - 1``."""
        if not self.coeffs:
            return "0"
        idx = range(len(self.coeffs)) if ascending else range(len(self.coeffs) - 1, -1, -1)
        parts: list[tuple[bool, str]] = []
        for i in idx:
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "t" if i == 1 else f"t^{i}"
                if mag == 1:
                    body = var
                else:
                    body = f"{mag}*{var}" if star else f"{mag}{var}"
            parts.append((c < 0, body))
        out = []
        for k, (neg, body) in enumerate(parts):
            if k == 0:
                out.append(("-" if neg else "") + body)
            else:
                op = "-" if neg else "+"
                out.append(f" {op} {body}" if spaces else f"{op}{body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)!r})"


T = IntPoly((0, 1))
