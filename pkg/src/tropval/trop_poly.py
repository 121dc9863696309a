"""Univariate max-plus polynomials over Q_max.

A :class:`TropPoly` is a raw coefficient list; as a function it is
``x -> max_i (a_i + i*x)``.  Different coefficient lists can define the same
function, and :func:`canonicalize` picks the largest representative of each
class: the least concave majorant of the points ``(i, a_i)`` taken between the
lowest and highest finite exponent.  In that form the polynomial factors as

    unit * T^r * (T + root_1) * ... * (T + root_k)

with the roots read off as consecutive coefficient differences.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .trop_core import BOTTOM, ONE, Trop, format_rat, trop_add, trop_mul

__all__ = [
    "TropPoly",
    "CanonicalPoly",
    "LinearFactorization",
    "ZeroPolynomialError",
    "poly_add",
    "poly_mul",
    "poly_eval",
    "canonicalize",
    "func_equiv",
    "t_order",
    "poly_degree",
    "factor",
    "expand",
    "monomial",
    "constant",
    "T",
]


class ZeroPolynomialError(ValueError):
    """Raised when an operation is undefined on the all-bottom polynomial."""


def _to_trop(c) -> Trop:
    return c if isinstance(c, Trop) else Trop(c)


class TropPoly:
    """Raw element of Q_max[T]; ``coeffs[i]`` is the coefficient of T^i."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "_coeffs", tuple(_to_trop(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def coeffs(self) -> tuple[Trop, ...]:
        return self._coeffs

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self._coeffs) if c.is_finite]

    @property
    def is_zero(self) -> bool:
        return all(c.is_bottom for c in self._coeffs)

    def __add__(self, other):
        return poly_add(self, _as_poly(other))

    __radd__ = __add__

    def __mul__(self, other):
        return poly_mul(self, _as_poly(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TropPoly:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = TropPoly([ONE])
        for _ in range(n):
            out = poly_mul(out, self)
        return out

    def __call__(self, x) -> Trop:
        return poly_eval(self, _to_trop(x))

    def __eq__(self, other) -> bool:
        # structural, ignoring trailing bottoms; use func_equiv for functions
        if not isinstance(other, TropPoly):
            return NotImplemented
        return _trim(self._coeffs) == _trim(other._coeffs)

    def __hash__(self) -> int:
        return hash(_trim(self._coeffs))

    def __repr__(self) -> str:
        return f"{type(self).__name__}([{', '.join(str(c) for c in self._coeffs)}])"

    def __str__(self) -> str:
        return format_poly(self)


def _trim(coeffs: Sequence[Trop]) -> tuple[Trop, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1].is_bottom:
        n -= 1
    return tuple(coeffs[:n])


def _as_poly(x) -> TropPoly:
    if isinstance(x, TropPoly):
        return x
    return TropPoly([_to_trop(x)])


def monomial(coeff, power: int) -> TropPoly:
    return TropPoly([BOTTOM] * power + [_to_trop(coeff)])


def constant(c) -> TropPoly:
    return TropPoly([_to_trop(c)])


T = monomial(0, 1)


def format_poly(f: TropPoly) -> str:
    """Render highest power first, e.g. ``T^2 + 3/2*T + 3``."""
    terms = []
    for i in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[i]
        if c.is_bottom:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        var = "T" if i == 1 else f"T^{i}"
        terms.append(var if c == ONE else f"{c}*{var}")
    return " + ".join(terms) if terms else "-inf"


def poly_add(f: TropPoly, g: TropPoly) -> TropPoly:
    a, b = f.coeffs, g.coeffs
    n = max(len(a), len(b))
    a = a + (BOTTOM,) * (n - len(a))
    b = b + (BOTTOM,) * (n - len(b))
    return TropPoly(trop_add(x, y) for x, y in zip(a, b))


def poly_mul(f: TropPoly, g: TropPoly) -> TropPoly:
    a, b = f.coeffs, g.coeffs
    if not a or not b:
        return TropPoly([BOTTOM])
    out = [BOTTOM] * (len(a) + len(b) - 1)
    for r, x in enumerate(a):
        if x.is_bottom:
            continue
        for l, y in enumerate(b):
            out[r + l] = trop_add(out[r + l], trop_mul(x, y))
    return TropPoly(out)


def poly_eval(f: TropPoly, x: Trop) -> Trop:
    if x.is_bottom:
        return f.coeffs[0] if f.coeffs else BOTTOM
    best = BOTTOM
    for i, a in enumerate(f.coeffs):
        if a.is_finite:
            best = trop_add(best, Trop(a.value + i * x.value))
    return best


class CanonicalPoly(TropPoly):
    """The maximal representative of a functional-equivalence class.

    Coefficients are trimmed after the degree, bottom below the T-order,
    finite in between and concave in the exponent.  The zero polynomial is
    the empty coefficient tuple.
    """

    __slots__ = ()

    def __init__(self, coeffs: Iterable = ()):
        super().__init__(_trim(tuple(_to_trop(c) for c in coeffs)))
        support = self.support()
        if not support:
            return
        lo = support[0]
        if support != list(range(lo, len(self.coeffs))):
            raise ValueError("canonical coefficients must be finite on a contiguous window")
        vals = [c.value for c in self.coeffs[lo:]]
        slopes = [b - a for a, b in zip(vals, vals[1:])]
        if any(s2 > s1 for s1, s2 in zip(slopes, slopes[1:])):
            raise ValueError("canonical coefficients must be concave")

    @property
    def t_order(self) -> int:
        return t_order(self)

    @property
    def degree(self) -> int:
        return poly_degree(self)

    @property
    def leading(self) -> Trop:
        if self.is_zero:
            raise ZeroPolynomialError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]


def _upper_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    # monotone chain, points sorted by x; drops points on or below a chord
    hull: list[tuple[int, Fraction]] = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) <= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def canonicalize(f: TropPoly) -> CanonicalPoly:
    if isinstance(f, CanonicalPoly):
        return f
    pts = [(i, c.value) for i, c in enumerate(f.coeffs) if c.is_finite]
    if not pts:
        return CanonicalPoly(())
    hull = _upper_hull(pts)
    lo, hi = hull[0][0], hull[-1][0]
    out = [BOTTOM] * lo
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = (y2 - y1) / (x2 - x1)
        out.extend(Trop(y1 + slope * (i - x1)) for i in range(x1, x2))
    out.append(Trop(hull[-1][1]))
    assert len(out) == hi + 1
    return CanonicalPoly(out)


def func_equiv(f: TropPoly, g: TropPoly) -> bool:
    """True when ``f`` and ``g`` agree as functions on all of Q_max."""
    return canonicalize(f) == canonicalize(g)


def t_order(f: TropPoly) -> int:
    """Largest r with T^r dividing the class of ``f``."""
    support = canonicalize(f).support()
    if not support:
        raise ZeroPolynomialError("t_order is undefined for the zero polynomial")
    return support[0]


def poly_degree(f: TropPoly) -> int:
    support = canonicalize(f).support()
    if not support:
        raise ZeroPolynomialError("degree is undefined for the zero polynomial")
    return support[-1]


@dataclass(frozen=True)
class LinearFactorization:
    """``unit * T^t_power * prod(T + root)`` with roots in non-increasing order."""

    unit: Trop
    t_power: int
    roots: tuple[Fraction, ...] = ()

    def __post_init__(self):
        unit = _to_trop(self.unit)
        if unit.is_bottom:
            raise ValueError("the unit of a factorization must be finite")
        if self.t_power < 0:
            raise ValueError("t_power must be a natural number")
        object.__setattr__(self, "unit", unit)
        object.__setattr__(
            self, "roots", tuple(sorted((Fraction(r) for r in self.roots), reverse=True))
        )

    @property
    def root_multiset(self) -> Counter:
        return Counter(self.roots)

    def __str__(self) -> str:
        roots = ",".join(format_rat(r) for r in self.roots)
        return f"unit={self.unit} tpower={self.t_power} roots=[{roots}]"


def factor(f: TropPoly) -> LinearFactorization:
    """Unique factorization of the class of ``f`` into linear factors."""
    c = canonicalize(f)
    if c.is_zero:
        raise ZeroPolynomialError("the zero polynomial has no factorization")
    lo = c.support()[0]
    vals = [a.value for a in c.coeffs[lo:]]
    roots = [vals[i - 1] - vals[i] for i in range(1, len(vals))]
    return LinearFactorization(c.coeffs[-1], lo, tuple(roots))


def expand(fac: LinearFactorization) -> CanonicalPoly:
    """Multiply the factors back out.

    In prod(T + r_i) the coefficient of T^k is the largest sum of n - k
    roots, i.e. the sum of the n - k largest, so the product is built from
    prefix sums of the sorted roots.
    """
    n = len(fac.roots)
    sums = [Fraction(0)]
    for r in fac.roots:
        sums.append(sums[-1] + r)
    u = fac.unit.value
    coeffs = [BOTTOM] * fac.t_power + [Trop(u + sums[n - k]) for k in range(n + 1)]
    return CanonicalPoly(coeffs)
