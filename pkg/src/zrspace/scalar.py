"""Exact scalars: rationals (``fractions.Fraction``) and the real quadratic
field Q(sqrt(D)).

A :class:`QuadExt` is the real number ``a + b*sqrt(d)`` with rational ``a``,
``b`` and a squarefree integer ``d >= 2``.  Signs are decided exactly, so
every comparison in the package is free of floating point.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import DimensionMismatch, FieldMismatch, PreorderError

DEFAULT_D = 2

Scalar = Union["QuadExt", Fraction, int]


@lru_cache(maxsize=None)
def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise PreorderError(f"not a rational: {x!r}")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise PreorderError(f"not a rational: {x!r}") from exc
    raise PreorderError(f"not a rational: {x!r}")


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


class QuadExt:
    """The number ``a + b*sqrt(d)``; immutable and hashable.

    ``d`` only matters when ``b != 0``: rational values compare equal across
    fields and combine freely with any field.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = DEFAULT_D):
        a, b = as_fraction(a), as_fraction(b)
        if not is_squarefree(d):
            raise PreorderError(f"D must be a squarefree integer >= 2, got {d}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    @classmethod
    def coerce(cls, x, d: int = DEFAULT_D) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return cls(as_fraction(x), 0, d)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _field(self, other: "QuadExt") -> int:
        if self.b == 0:
            return other.d
        if other.b == 0 or other.d == self.d:
            return self.d
        raise FieldMismatch(f"cannot combine Q(sqrt({self.d})) with Q(sqrt({other.d}))")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = QuadExt.coerce(other, self.d)
        return QuadExt(self.a + other.a, self.b + other.b, self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-QuadExt.coerce(other, self.d))

    def __rsub__(self, other):
        return QuadExt.coerce(other, self.d) - self

    def __mul__(self, other):
        other = QuadExt.coerce(other, self.d)
        d = self._field(other)
        return QuadExt(
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def __truediv__(self, other):
        other = QuadExt.coerce(other, self.d)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(D))")
        num = self * other.conjugate()
        return QuadExt(num.a / n, num.b / n, num.d)

    def __rtruediv__(self, other):
        return QuadExt.coerce(other, self.d) / self

    def __abs__(self):
        return -self if sign(self) < 0 else self

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadExt):
            return NotImplemented
        return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * self.d ** 0.5

    def __repr__(self):
        if self.b == 0:
            return f"QuadExt({self.a})"
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt({self.d})"
        op = "+" if self.b > 0 else "-"
        return f"{self.a}{op}{abs(self.b)}*sqrt({self.d})"

    def approx(self, bits: int) -> Fraction:
        """Rational approximation within ``|b| * 2**-bits``."""
        if self.b == 0:
            return self.a
        scale = 1 << bits
        root = Fraction(isqrt(self.d * scale * scale), scale)
        return self.a + self.b * root


def sign(x) -> int:
    """Exact sign of a rational or of ``a + b*sqrt(d)``.

    With ``a`` and ``b`` of opposite signs the magnitudes are compared via
    ``a**2`` against ``d*b**2``; they are never equal because ``sqrt(d)`` is
    irrational.
    """
    if not isinstance(x, QuadExt):
        return _sign(as_fraction(x))
    sa, sb = _sign(x.a), _sign(x.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    return sa if x.a * x.a > x.d * x.b * x.b else sb


def dot(u: Sequence, w: Sequence[QuadExt]) -> QuadExt:
    """``u . w`` for a rational vector ``u`` and a Q(sqrt(D)) vector ``w``."""
    if len(u) != len(w):
        raise DimensionMismatch(f"dot of length {len(u)} with length {len(w)}")
    a = Fraction(0)
    b = Fraction(0)
    d = DEFAULT_D
    for x, y in zip(u, w):
        if x:
            a += x * y.a
            if y.b:
                b += x * y.b
                d = y.d
    return QuadExt(a, b, d)


def quad_vector(values: Iterable, d: int = DEFAULT_D) -> tuple:
    return tuple(QuadExt.coerce(v, d) for v in values)


def field_of(vectors: Iterable[Iterable[QuadExt]]) -> int | None:
    """The common D of all irrational entries, or None if all are rational."""
    found = None
    for vec in vectors:
        for x in vec:
            if x.b != 0:
                if found is None:
                    found = x.d
                elif found != x.d:
                    raise FieldMismatch(f"mixed fields sqrt({found}) and sqrt({x.d})")
    return found


def parse_scalar(value, d: int = DEFAULT_D) -> QuadExt:
    """Parse ``"p/q"``, an int, ``["a", "b"]`` or ``{"a": .., "b": ..}``."""
    if isinstance(value, QuadExt):
        return value
    if isinstance(value, dict):
        try:
            return QuadExt(as_fraction(value["a"]), as_fraction(value.get("b", 0)), d)
        except KeyError as exc:
            raise PreorderError(f"scalar object needs an 'a' field: {value!r}") from exc
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise PreorderError(f"scalar pair must have two entries: {value!r}")
        return QuadExt(as_fraction(value[0]), as_fraction(value[1]), d)
    return QuadExt(as_fraction(value), 0, d)


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def scalar_to_json(x: QuadExt) -> list:
    return [fraction_str(x.a), fraction_str(x.b)]


def scalar_to_obj(x: QuadExt) -> dict:
    return {"a": fraction_str(x.a), "b": fraction_str(x.b)}
