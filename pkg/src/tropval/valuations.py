"""Valuations on Q_max and on Q_max(T), and their classification.

Three notions are supported, selected by :class:`Kind`:

* ``CLASSICAL``: values in Q ∪ {+inf}, zero goes to +inf, and
  ``min(v(x), v(y)) <= v(x + y)``.
* ``STRICT``: values in Q ∪ {-inf}, zero goes to -inf, and
  ``v(x + y) = max(v(x), v(y))``.
* ``HYPER``: values in the valuative hyperfield, and ``v(x + y)`` lies in the
  hypersum ``v(x) (+) v(y)``.

All three are multiplicative: ``v(xy) = v(x) + v(y)``.

Every valuation on Q_max is ``q -> q*c`` for a parameter ``c = v(1)``, and
every valuation on Q_max(T) that is trivial on constants is determined by
``t = v(T)``: it sends a polynomial class f to ``t * (T-order of f)`` when
t < 0 and to ``t * deg f`` when t > 0.  Equivalence up to a positive scale
only sees the sign of the parameter.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, NamedTuple, Union

from .hyper import rval_add, rval_contains
from .report import AxiomReport
from .trop_core import BOTTOM, Trop, format_rat
from .trop_poly import (
    LinearFactorization,
    TropPoly,
    canonicalize,
    expand,
    poly_degree,
    t_order,
)
from .trop_ratfunc import TropRational, rat_normalize

__all__ = [
    "ClosedPair",
    "Kind",
    "ExtVal",
    "QmaxValuation",
    "FFValuation",
    "EquivClass",
    "CurvePoint",
    "AbstractCurve",
    "qmax_val_eval",
    "ff_val_eval",
    "check_valuation_axioms",
    "qmax_classify",
    "ff_classify",
    "equivalent",
    "equivalence_ratio",
    "abstract_curve",
    "parse_valuation_spec",
    "format_valuation_spec",
    "random_scalar",
    "random_fraction",
    "closed_pairs",
]


class Kind(enum.Enum):
    CLASSICAL = "classical"
    STRICT = "strict"
    HYPER = "hyper"


_TAGS = {"bottom": 0, "finite": 1, "top": 2}


@dataclass(frozen=True)
class ExtVal:
    """A rational, or one of the infinities -inf ("bottom") / +inf ("top")."""

    tag: str
    value: Fraction | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError(f"unknown ExtVal tag {self.tag!r}")
        if (self.tag == "finite") != (self.value is not None):
            raise ValueError("only finite values carry a rational")
        if self.value is not None:
            object.__setattr__(self, "value", Fraction(self.value))

    @classmethod
    def finite(cls, q) -> ExtVal:
        return cls("finite", Fraction(q))

    @classmethod
    def from_trop(cls, x: Trop) -> ExtVal:
        return BOTTOM_VAL if x.is_bottom else cls.finite(x.value)

    def to_trop(self) -> Trop:
        if self.tag == "top":
            raise ValueError("+inf is not an element of Q_max")
        return BOTTOM if self.tag == "bottom" else Trop(self.value)

    @property
    def is_finite(self) -> bool:
        return self.tag == "finite"

    def _key(self):
        return (_TAGS[self.tag], self.value or 0)

    def __lt__(self, other: ExtVal) -> bool:
        return self._key() < other._key()

    def __le__(self, other: ExtVal) -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: ExtVal) -> bool:
        return self._key() > other._key()

    def __ge__(self, other: ExtVal) -> bool:
        return self._key() >= other._key()

    def __add__(self, other: ExtVal) -> ExtVal:
        if self.is_finite and other.is_finite:
            return ExtVal.finite(self.value + other.value)
        tags = {self.tag, other.tag}
        if tags == {"top", "bottom"}:
            raise ValueError("+inf + -inf is undefined")
        return TOP_VAL if "top" in tags else BOTTOM_VAL

    def __neg__(self) -> ExtVal:
        if self.is_finite:
            return ExtVal.finite(-self.value)
        return BOTTOM_VAL if self.tag == "top" else TOP_VAL

    def __sub__(self, other: ExtVal) -> ExtVal:
        return self + (-other)

    def __str__(self) -> str:
        if self.tag == "top":
            return "inf"
        if self.tag == "bottom":
            return "-inf"
        return format_rat(self.value)


TOP_VAL = ExtVal("top")
BOTTOM_VAL = ExtVal("bottom")


def _zero_image(kind: Kind) -> ExtVal:
    return TOP_VAL if kind is Kind.CLASSICAL else BOTTOM_VAL


def _kind(kind) -> Kind:
    return kind if isinstance(kind, Kind) else Kind(str(kind).lower())


# -- Q_max -------------------------------------------------------------------


@dataclass(frozen=True)
class QmaxValuation:
    """The valuation on Q_max with ``v(1) = c``; q goes to q*c."""

    kind: Kind
    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "kind", _kind(self.kind))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.kind is not Kind.CLASSICAL and self.c < 0:
            raise ValueError(f"a {self.kind.value} valuation on Q_max needs v(1) >= 0, got {format_rat(self.c)}")

    @property
    def param(self) -> Fraction:
        return self.c

    def __call__(self, x: Trop) -> ExtVal:
        return qmax_val_eval(self, x)


def qmax_val_eval(v: QmaxValuation, x: Trop) -> ExtVal:
    if x.is_bottom:
        return _zero_image(v.kind)
    return ExtVal.finite(x.value * v.c)


# -- Q_max(T) ----------------------------------------------------------------


@dataclass(frozen=True)
class FFValuation:
    """Valuation on Q_max(T), trivial on Q_max, with ``v(T) = t``."""

    kind: Kind
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "kind", _kind(self.kind))
        object.__setattr__(self, "t", Fraction(self.t))
        if self.kind is Kind.CLASSICAL:
            raise ValueError("classical valuations on Q_max(T) are not classified; use strict or hyper")

    @property
    def param(self) -> Fraction:
        return self.t

    @property
    def trivial_on_base(self) -> bool:
        return True

    def __call__(self, p) -> ExtVal:
        return ff_val_eval(self, p)


def _poly_value(t: Fraction, f: TropPoly) -> Fraction:
    if t < 0:
        return t_order(f) * t
    if t > 0:
        return poly_degree(f) * t
    return Fraction(0)


def ff_val_eval(v: FFValuation, p) -> ExtVal:
    """Evaluate on a fraction, a polynomial, or a scalar (as a constant)."""
    if isinstance(p, Trop):
        p = TropPoly([p])
    if isinstance(p, TropPoly):
        c = canonicalize(p)
        return BOTTOM_VAL if c.is_zero else ExtVal.finite(_poly_value(v.t, c))
    if p.is_zero:
        return BOTTOM_VAL
    return ExtVal.finite(_poly_value(v.t, p.num) - _poly_value(v.t, p.den))


Valuation = Union[QmaxValuation, FFValuation]


# -- axiom checking ----------------------------------------------------------

_ADDITION_AXIOM = {
    Kind.CLASSICAL: "min_inequality",
    Kind.STRICT: "max_additivity",
    Kind.HYPER: "hyper_membership",
}


def check_valuation_axioms(
    kind,
    candidate: Callable | Mapping,
    pairs: Iterable[tuple],
    zero=None,
) -> AxiomReport:
    """Test a candidate map against the axioms of ``kind`` on sample pairs.

    ``pairs`` holds ``(x, y)`` with elements supporting ``+`` and ``*``, or
    :class:`ClosedPair` records carrying the sum and product already.  The
    candidate is evaluated on x, y, x + y and x * y, so a mapping candidate
    must cover those.  ``zero`` is the semiring zero (default: -inf, or the
    zero fraction when the samples are fractions).
    """
    kind = _kind(kind)
    nu = candidate.__getitem__ if isinstance(candidate, Mapping) else candidate
    inf = _zero_image(kind)
    other_inf = TOP_VAL if inf is BOTTOM_VAL else BOTTOM_VAL
    add_axiom = _ADDITION_AXIOM[kind]
    rep = AxiomReport()
    seen = 0
    for item in pairs:
        seen += 1
        x, y = item[0], item[1]
        if zero is None:
            zero = BOTTOM if isinstance(x, Trop) else TropRational.of(TropPoly([BOTTOM]))
        s, m = (item[2], item[3]) if len(item) == 4 else (x + y, x * y)
        vx, vy, vs, vm = nu(x), nu(y), nu(s), nu(m)
        for e, ve in ((x, vx), (y, vy), (s, vs), (m, vm)):
            if (e == zero) != (ve == inf) or ve == other_inf:
                rep.fail("kernel", e, detail=f"v={ve}")
        if vx == other_inf or vy == other_inf:
            continue
        if vm != vx + vy:
            rep.fail("multiplicativity", x, y, detail=f"v(xy)={vm} v(x)+v(y)={vx + vy}")
        if kind is Kind.CLASSICAL:
            good = min(vx, vy) <= vs
        elif kind is Kind.STRICT:
            good = vs == max(vx, vy)
        else:
            good = vs != other_inf and rval_contains(rval_add(vx.to_trop(), vy.to_trop()), vs.to_trop())
        if not good:
            rep.fail(add_axiom, x, y, detail=f"v(x)={vx} v(y)={vy} v(x+y)={vs}")
    if not seen:
        raise ValueError("no sample pairs supplied")
    for axiom in ("kernel", "multiplicativity", add_axiom):
        rep.record(axiom)
    return rep


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class EquivClass:
    label: str
    representative: Valuation

    @property
    def param(self) -> Fraction:
        return self.representative.param

    def __str__(self) -> str:
        return f"label={self.label} param={format_rat(self.param)}"


def qmax_classify(kind) -> list[EquivClass]:
    """Equivalence classes of valuations on Q_max, one per sign of v(1)."""
    kind = _kind(kind)
    signs = [(-1, "negative"), (0, "trivial"), (1, "positive")]
    if kind is not Kind.CLASSICAL:
        signs = signs[1:]
    return [EquivClass(label, QmaxValuation(kind, c)) for c, label in signs]


def ff_classify(kind) -> list[EquivClass]:
    """Equivalence classes of valuations on Q_max(T) trivial on Q_max."""
    kind = _kind(kind)
    if kind is Kind.CLASSICAL:
        raise ValueError("classical valuations on Q_max(T) are not classified")
    return [EquivClass(label, FFValuation(kind, t)) for t, label in ((-1, "nu_-"), (0, "nu_0"), (1, "nu_+"))]


def _check_comparable(v1: Valuation, v2: Valuation) -> None:
    if type(v1) is not type(v2):
        raise ValueError("valuations live on different carriers")
    if v1.kind is not v2.kind:
        raise ValueError(f"cannot compare a {v1.kind.value} valuation with a {v2.kind.value} one")


def equivalence_ratio(v1: Valuation, v2: Valuation) -> Fraction | None:
    """The positive rho with v1 = rho * v2, or None if the two are inequivalent."""
    _check_comparable(v1, v2)
    a, b = v1.param, v2.param
    if a == 0 and b == 0:
        return Fraction(1)
    if a * b > 0:
        return a / b
    return None


def equivalent(v1: Valuation, v2: Valuation) -> bool:
    return equivalence_ratio(v1, v2) is not None


# -- the three-point curve ---------------------------------------------------


@dataclass(frozen=True)
class CurvePoint:
    name: str
    valuation: str
    closed: bool
    ideal: str


@dataclass(frozen=True)
class AbstractCurve:
    points: tuple[CurvePoint, ...]

    @property
    def closed_points(self) -> tuple[CurvePoint, ...]:
        return tuple(p for p in self.points if p.closed)

    def point(self, name: str) -> CurvePoint:
        return next(p for p in self.points if p.name == name)


def abstract_curve() -> AbstractCurve:
    """The projective line over F_1 seen through the valuation classes of Q_max(T).

    Points are glued from Spec of the monoids {1, t, t^2, ...} and
    {1, t^-1, t^-2, ...}.  Each nontrivial class of valuations gives a closed
    point; the trivial class gives the generic point.
    """
    ideals = {
        "nu_+": ("c_+", "prime ideal {t,t^2,t^3,...} of <t>"),
        "nu_0": ("c_0", "generic point; prime ideal {} shared by both charts"),
        "nu_-": ("c_-", "prime ideal {t^-1,t^-2,t^-3,...} of <t^-1>"),
    }
    classes = {c.label: c for c in ff_classify(Kind.STRICT)}
    points = []
    for label in ("nu_+", "nu_0", "nu_-"):
        name, ideal = ideals[label]
        nontrivial = classes[label].param != 0
        points.append(CurvePoint(name, label, nontrivial, ideal))
    return AbstractCurve(tuple(points))


# -- valuation strings -------------------------------------------------------


def parse_valuation_spec(text: str) -> Valuation:
    """Parse ``kind=strict; base=qmax(T); param=-1``."""
    fields = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        key, sep, val = part.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {part.strip()!r}")
        fields[key.strip().lower()] = val.strip()
    unknown = fields.keys() - {"kind", "base", "param"}
    if unknown:
        raise ValueError(f"unknown field(s): {', '.join(sorted(unknown))}")
    try:
        kind = Kind(fields.get("kind", "").lower())
    except ValueError:
        raise ValueError("kind must be classical, strict or hyper") from None
    try:
        param = Fraction(fields["param"])
    except (KeyError, ValueError, ZeroDivisionError):
        raise ValueError("param must be a rational number") from None
    base = fields.get("base", "qmax(T)").replace(" ", "")
    if base.lower() == "qmax":
        return QmaxValuation(kind, param)
    if base in ("qmax(T)", "qmax(t)"):
        return FFValuation(kind, param)
    raise ValueError(f"base must be qmax or qmax(T), got {base!r}")


def format_valuation_spec(v: Valuation) -> str:
    base = "qmax" if isinstance(v, QmaxValuation) else "qmax(T)"
    return f"kind={v.kind.value}; base={base}; param={format_rat(v.param)}"


# -- sampling harness --------------------------------------------------------


def random_rational(rng: random.Random, span: int = 6, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span * den, span * den), rng.randint(1, den))


def random_scalar(rng: random.Random, p_bottom: float = 0.1) -> Trop:
    if rng.random() < p_bottom:
        return BOTTOM
    return Trop(random_rational(rng))


def random_canonical(rng: random.Random, max_degree: int = 4):
    """A random nonzero polynomial class, built from its factorization."""
    deg = rng.randint(0, max_degree)
    tp = rng.randint(0, deg)
    roots = [random_rational(rng) for _ in range(deg - tp)]
    return expand(LinearFactorization(Trop(random_rational(rng)), tp, tuple(roots)))


def random_fraction(rng: random.Random, max_degree: int = 3, p_zero: float = 0.05) -> TropRational:
    if rng.random() < p_zero:
        return TropRational.of(TropPoly([BOTTOM]))
    return rat_normalize(random_canonical(rng, max_degree), random_canonical(rng, max_degree))


class ClosedPair(NamedTuple):
    """A sample pair together with its sum and product, computed once."""

    x: Any
    y: Any
    sum: Any
    prod: Any


def closed_pairs(rng: random.Random, n: int, carrier: str = "qmax") -> list[ClosedPair]:
    """Sample pairs closed under + and *, ready for :func:`check_valuation_axioms`.

    The first pairs always pin down -inf, the unit and mixed-sign values.
    Sums and products are stored so several candidates can be checked against
    the same sample without recomputing them.
    """
    if carrier == "qmax":
        fixed = [Trop(0), Trop(1), Trop(-1), BOTTOM, Trop(Fraction(3, 2))]
        pairs = [(a, b) for a in fixed for b in fixed]
        draw = lambda: random_scalar(rng)  # noqa: E731
    elif carrier == "qmax(T)":
        zero = TropRational.of(TropPoly([BOTTOM]))
        fixed = [TropRational.of(Trop(0)), TropRational.of(TropPoly([BOTTOM, 0])), zero,
                 TropRational.of(TropPoly([0]), TropPoly([BOTTOM, 0]))]
        pairs = [(a, b) for a in fixed for b in fixed]
        draw = lambda: random_fraction(rng)  # noqa: E731
    else:
        raise ValueError(f"unknown carrier {carrier!r}")
    pairs = pairs[:n]
    while len(pairs) < n:
        pairs.append((draw(), draw()))
    return [ClosedPair(x, y, x + y, x * y) for x, y in pairs]
