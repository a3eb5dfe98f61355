"""Truncated power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .poly import IntPoly


class SeriesError(ValueError):
    pass


def _exact(x) -> Fraction:
    if isinstance(x, float):
        raise SeriesError(f"inexact coefficient {x!r}")
    return Fraction(x)


class TruncatedSeries:
    """Series ``sum c_i t^i`` known modulo ``t^(order+1)``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise SeriesError("negative order")
        c = [_exact(x) for x in coeffs][: order + 1]
        c += [Fraction(0)] * (order + 1 - len(c))
        self.order = order
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def from_poly(cls, p: IntPoly, order: int) -> TruncatedSeries:
        return cls(p.coeffs, order)

    def _check(self, other: TruncatedSeries) -> None:
        if other.order != self.order:
            raise SeriesError(f"order mismatch {self.order} vs {other.order}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries((a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries((a - b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries((sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)), n)

    def reciprocal(self) -> TruncatedSeries:
        a = self.coeffs
        if a[0] != 1:
            raise SeriesError("reciprocal needs constant term 1")
        b = [Fraction(1)]
        for k in range(1, self.order + 1):
            b.append(-sum(a[i] * b[k - i] for i in range(1, k + 1)))
        return TruncatedSeries(b, self.order)

    def exp(self) -> TruncatedSeries:
        # n g_n = sum_{k=1..n} k f_k g_{n-k}
        f = self.coeffs
        if f[0] != 0:
            raise SeriesError("exp needs constant term 0")
        g = [Fraction(1)]
        for n in range(1, self.order + 1):
            g.append(sum(k * f[k] * g[n - k] for k in range(1, n + 1)) * Fraction(1, n))
        return TruncatedSeries(g, self.order)

    def log(self) -> TruncatedSeries:
        # n f_n = n g_n - sum_{k=1..n-1} k f_k g_{n-k}
        g = self.coeffs
        if g[0] != 1:
            raise SeriesError("log needs constant term 1")
        f = [Fraction(0)]
        for n in range(1, self.order + 1):
            f.append(g[n] - sum(k * f[k] * g[n - k] for k in range(1, n)) * Fraction(1, n))
        return TruncatedSeries(f, self.order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self.coeffs]}, order={self.order})"


def series_from(coeffs: Sequence, order: int) -> TruncatedSeries:
    return TruncatedSeries(coeffs, order)
