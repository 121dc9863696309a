"""Scalar arithmetic in the tropical semifield Q_max and the boolean semifield B.

Q_max is Q together with a bottom element -inf.  Tropical addition is ``max``
and tropical multiplication is ordinary addition of rationals, so bottom is the
additive zero and ``Trop(0)`` is the multiplicative one.

Rationals are :class:`fractions.Fraction`, which is always kept in lowest terms
with a positive denominator.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rat = Fraction

RationalLike = Union[int, Fraction, str]

__all__ = [
    "Rat",
    "Trop",
    "BOTTOM",
    "ONE",
    "Bool",
    "trop_add",
    "trop_mul",
    "trop_inv",
    "trop_leq",
    "parse_scalar",
    "format_rat",
]

_SCALAR_RE = re.compile(r"^\s*([+-]?)\s*(?:(inf)|(\d+)(?:\s*/\s*(\d+))?)\s*$")


def _as_rat(value: RationalLike) -> Fraction:
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


@total_ordering
class Trop:
    """An element of Q_max: a rational, or bottom when ``value`` is None.

    >>> Trop(3) + Trop(5)
    Trop(5)
    >>> Trop(1) * Trop(2)
    Trop(3)
    >>> BOTTOM * Trop(9)
    Trop(-inf)
    """

    __slots__ = ("_value",)

    def __init__(self, value: RationalLike | None = None):
        object.__setattr__(self, "_value", None if value is None else _as_rat(value))

    def __setattr__(self, name, value):
        raise AttributeError("Trop is immutable")

    @property
    def value(self) -> Fraction | None:
        return self._value

    @property
    def is_bottom(self) -> bool:
        return self._value is None

    @property
    def is_finite(self) -> bool:
        return self._value is not None

    def __add__(self, other: Trop) -> Trop:
        return trop_add(self, _coerce(other))

    __radd__ = __add__

    def __mul__(self, other: Trop) -> Trop:
        return trop_mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Trop:
        if n < 0:
            return trop_inv(self) ** (-n)
        if n == 0:
            return ONE
        if self._value is None:
            return BOTTOM
        return Trop(self._value * n)

    def __truediv__(self, other: Trop) -> Trop:
        return trop_mul(self, trop_inv(_coerce(other)))

    def __eq__(self, other) -> bool:
        if isinstance(other, Trop):
            return self._value == other._value
        return NotImplemented

    def __lt__(self, other: Trop) -> bool:
        if not isinstance(other, Trop):
            return NotImplemented
        if self._value is None:
            return other._value is not None
        return other._value is not None and self._value < other._value

    def __hash__(self) -> int:
        return hash(("Trop", self._value))

    def __repr__(self) -> str:
        return f"Trop({self})"

    def __str__(self) -> str:
        if self._value is None:
            return "-inf"
        return format_rat(self._value)


BOTTOM = Trop(None)
ONE = Trop(0)


def _coerce(x) -> Trop:
    if isinstance(x, Trop):
        return x
    return Trop(x)


def trop_add(x: Trop, y: Trop) -> Trop:
    """Tropical sum: the larger of the two, bottom being least."""
    if x.is_bottom:
        return y
    if y.is_bottom:
        return x
    return x if x.value >= y.value else y


def trop_mul(x: Trop, y: Trop) -> Trop:
    if x.is_bottom or y.is_bottom:
        return BOTTOM
    return Trop(x.value + y.value)


def trop_inv(x: Trop) -> Trop:
    if x.is_bottom:
        raise ZeroDivisionError("-inf has no tropical inverse")
    return Trop(-x.value)


def trop_leq(x: Trop, y: Trop) -> bool:
    """Canonical order of an idempotent semiring: x <= y iff x + y == y."""
    return trop_add(x, y) == y


def format_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_scalar(text: str) -> Trop:
    """Parse ``-inf``, an integer, or a ``p/q`` fraction with optional sign."""
    m = _SCALAR_RE.match(text)
    if m is None:
        raise ValueError(f"not a tropical scalar: {text!r}")
    sign, inf, num, den = m.groups()
    if inf:
        if sign != "-":
            raise ValueError("only -inf is an element of Q_max")
        return BOTTOM
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    q = Fraction(int(num), int(den) if den is not None else 1)
    return Trop(-q if sign == "-" else q)


class Bool:
    """The boolean semifield B = {0, 1} with 1 + 1 = 1."""

    __slots__ = ("_bit",)

    def __init__(self, bit: int | bool):
        if bit not in (0, 1):
            raise ValueError("Bool takes 0 or 1")
        object.__setattr__(self, "_bit", int(bit))

    def __setattr__(self, name, value):
        raise AttributeError("Bool is immutable")

    def __add__(self, other: Bool) -> Bool:
        return Bool(self._bit | other._bit)

    def __mul__(self, other: Bool) -> Bool:
        return Bool(self._bit & other._bit)

    def __le__(self, other: Bool) -> bool:
        return self + other == other

    def __eq__(self, other) -> bool:
        return isinstance(other, Bool) and self._bit == other._bit

    def __hash__(self) -> int:
        return hash(("Bool", self._bit))

    def __bool__(self) -> bool:
        return bool(self._bit)

    def __repr__(self) -> str:
        return f"Bool({self._bit})"


Bool.ZERO = Bool(0)
Bool.ONE = Bool(1)
