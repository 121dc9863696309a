"""The semifield Q_max(T) of fractions of functional-equivalence classes.

Fractions are kept in a normal form: numerator and denominator share no T
power and no root, and the denominator is monic (unit 0).  Because the
polynomial classes factor uniquely, this makes equality structural.
"""
from __future__ import annotations

from collections import Counter

from .trop_core import ONE, Trop, trop_inv, trop_mul
from .trop_poly import (
    CanonicalPoly,
    LinearFactorization,
    TropPoly,
    canonicalize,
    constant,
    expand,
    factor,
    format_poly,
    func_equiv,
    poly_add,
    poly_eval,
    poly_mul,
)

__all__ = [
    "TropRational",
    "rat_normalize",
    "rat_add",
    "rat_mul",
    "rat_inv",
    "rat_eq",
    "rat_eval",
]

_UNIT = CanonicalPoly([ONE])
_ZERO = CanonicalPoly(())


class TropRational:
    """A normalized fraction ``num / den`` in Q_max(T).

    Build with :func:`rat_normalize` or :meth:`of`; the constructor trusts its
    arguments are already normal.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: CanonicalPoly, den: CanonicalPoly):
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("TropRational is immutable")

    @classmethod
    def of(cls, num, den=None) -> TropRational:
        if den is None:
            den = _UNIT
        return rat_normalize(_poly(num), _poly(den))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den == _UNIT

    def __add__(self, other):
        return rat_add(self, _as_rat(other))

    __radd__ = __add__

    def __mul__(self, other):
        return rat_mul(self, _as_rat(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return rat_mul(self, rat_inv(_as_rat(other)))

    def __pow__(self, n: int) -> TropRational:
        base = self if n >= 0 else rat_inv(self)
        out = TropRational(_UNIT, _UNIT)
        for _ in range(abs(n)):
            out = rat_mul(out, base)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TropRational):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"TropRational({self})"

    def __str__(self) -> str:
        if self.is_polynomial:
            return format_poly(self.num)
        return f"({format_poly(self.num)}) / ({format_poly(self.den)})"


def _poly(x) -> TropPoly:
    if isinstance(x, TropPoly):
        return x
    return constant(x)


def _as_rat(x) -> TropRational:
    if isinstance(x, TropRational):
        return x
    return TropRational.of(_poly(x))


def rat_normalize(num: TropPoly, den: TropPoly) -> TropRational:
    num, den = canonicalize(num), canonicalize(den)
    if den.is_zero:
        raise ZeroDivisionError("denominator is the zero polynomial")
    if num.is_zero:
        return TropRational(_ZERO, _UNIT)
    fn, fd = factor(num), factor(den)
    shared_t = min(fn.t_power, fd.t_power)
    rn, rd = Counter(fn.roots), Counter(fd.roots)
    common = rn & rd
    new_num = LinearFactorization(
        trop_mul(fn.unit, trop_inv(fd.unit)),
        fn.t_power - shared_t,
        tuple((rn - common).elements()),
    )
    new_den = LinearFactorization(ONE, fd.t_power - shared_t, tuple((rd - common).elements()))
    return TropRational(expand(new_num), expand(new_den))


def rat_add(p: TropRational, q: TropRational) -> TropRational:
    return rat_normalize(
        poly_add(poly_mul(p.num, q.den), poly_mul(q.num, p.den)),
        poly_mul(p.den, q.den),
    )


def rat_mul(p: TropRational, q: TropRational) -> TropRational:
    return rat_normalize(poly_mul(p.num, q.num), poly_mul(p.den, q.den))


def rat_inv(p: TropRational) -> TropRational:
    if p.is_zero:
        raise ZeroDivisionError("the zero fraction has no inverse")
    return rat_normalize(p.den, p.num)


def rat_eq(p: TropRational, q: TropRational) -> bool:
    """Cross-multiplied equality; sound because Q_max[T]/~ is cancellative."""
    return func_equiv(poly_mul(p.num, q.den), poly_mul(q.num, p.den))


def rat_eval(p: TropRational, x: Trop) -> Trop:
    """Value of the fraction as a function; undefined where the denominator is -inf."""
    d = poly_eval(p.den, x)
    if d.is_bottom:
        raise ZeroDivisionError(f"denominator vanishes at {x}")
    return trop_mul(poly_eval(p.num, x), trop_inv(d))
