"""Exact scalar arithmetic: rationals and real quadratic extensions Q(sqrt(d)).

Rationals are plain ``fractions.Fraction`` values.  A :class:`QuadraticNumber`
is an element ``a + b*sqrt(d)`` of a fixed real quadratic field, with ``d`` a
square-free integer > 1.  Arithmetic never leaves the field; combining numbers
from two different extensions raises :class:`MixedFieldError` instead of
coercing.  Everything here is immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Union

Rational = Fraction

Scalar = Union[int, Fraction, "QuadraticNumber"]


class MixedFieldError(TypeError):
    """Raised when operands live in different quadratic extensions."""


def is_square_free(d: int) -> bool:
    if d < 1:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


def square_free_decompose(n: int) -> tuple[int, int]:
    """Write ``n = k*k * d`` with ``d`` square-free; return ``(k, d)``.

    Requires ``n > 0``.
    """
    if n <= 0:
        raise ValueError("positive integer required")
    k, d, f = 1, 1, 2
    while f * f <= n:
        e = 0
        while n % f == 0:
            n //= f
            e += 1
        k *= f ** (e // 2)
        if e % 2:
            d *= f
        f += 1
    return k, d * n


def is_rational_square(q: Fraction | int) -> bool:
    """Exact test whether ``q`` is the square of a rational number."""
    q = Fraction(q)
    if q < 0:
        return False
    if q == 0:
        return True
    p, r = q.numerator, q.denominator
    return isqrt(p) ** 2 == p and isqrt(r) ** 2 == r


def rational_sqrt(q: Fraction | int) -> Fraction:
    """Square root of a rational square (raises if ``q`` is not one)."""
    q = Fraction(q)
    if not is_rational_square(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


class QuadraticNumber:
    """Element ``a + b*sqrt(d)`` of Q(sqrt(d)), exact.

    ``d`` must be square-free and > 1, so sqrt(d) is irrational and the
    representation is unique.  Comparisons against plain rationals work when
    the value is rational (``b == 0``).
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Fraction | int, b: Fraction | int, d: int):
        if d <= 1 or not is_square_free(d):
            raise ValueError(f"field parameter must be square-free and > 1, got {d}")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    def is_rational(self) -> bool:
        return self.b == 0

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def _coerce(self, other: Scalar) -> "QuadraticNumber | None":
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                raise MixedFieldError(
                    f"cannot mix Q(sqrt({self.d})) with Q(sqrt({other.d}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other, 0, self.d)
        return None

    def __add__(self, other: Scalar):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other: Scalar):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other: Scalar):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(o.a - self.a, o.b - self.b, self.d)

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __mul__(self, other: Scalar):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        # norm a^2 - d b^2 vanishes only at 0 because d is not a square
        n = self.a * self.a - self.d * self.b * self.b
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other: Scalar):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadraticNumber):
            if other.d != self.d:
                return self.b == 0 and other.b == 0 and self.a == other.a
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __repr__(self):
        return f"QuadraticNumber({self.a!r}, {self.b!r}, {self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}+{self.b}*sqrt({self.d})"


def field_of(x: Scalar) -> int | None:
    """Field tag of a scalar: ``None`` for Q, ``d`` for Q(sqrt(d))."""
    if isinstance(x, QuadraticNumber):
        return x.d
    if isinstance(x, (int, Fraction)):
        return None
    raise TypeError(f"not an exact scalar: {x!r}")


def join_fields(*tags: int | None) -> int | None:
    """Common field tag for the given tags; mixed extensions are an error."""
    out: int | None = None
    for t in tags:
        if t is None:
            continue
        if out is None:
            out = t
        elif out != t:
            raise MixedFieldError(f"cannot mix Q(sqrt({out})) with Q(sqrt({t}))")
    return out


def promote(x: Scalar, d: int | None) -> Scalar:
    """Embed ``x`` into Q (``d=None``) or Q(sqrt(d))."""
    if d is None:
        if isinstance(x, QuadraticNumber):
            if not x.is_rational():
                raise MixedFieldError("irrational value cannot be demoted to Q")
            return x.a
        return Fraction(x)
    if isinstance(x, QuadraticNumber):
        if x.d != d:
            raise MixedFieldError(f"cannot mix Q(sqrt({x.d})) with Q(sqrt({d}))")
        return x
    return QuadraticNumber(Fraction(x), 0, d)


def as_rational(x: Scalar) -> Fraction:
    """The rational value of ``x`` (raises on irrational input)."""
    if isinstance(x, QuadraticNumber):
        if not x.is_rational():
            raise ValueError(f"{x} is irrational")
        return x.a
    return Fraction(x)
