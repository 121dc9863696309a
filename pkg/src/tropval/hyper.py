"""Hyperfields: the valuative hyperfield on Q ∪ {-inf} and finite hyperstructures.

The valuative hyperfield has the max-plus carrier but a multi-valued sum:
``x (+) y`` is ``{max(x, y)}`` when x != y and the down-closed interval
``[-inf, x]`` when x == y.  Sums of sums are infinite sets, so they are
handled symbolically: every set that arises is a union of singletons and
down-closed intervals, and :func:`rval_union` reduces such a union to a unique
descriptor list.

Finite hyperstructures are explicit tables checked exhaustively against the
canonical hypergroup and hyperring axioms.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .report import AxiomReport
from .trop_core import BOTTOM, ONE, Trop, trop_add, trop_inv, trop_mul

__all__ = [
    "RvalSet",
    "singleton",
    "down_interval",
    "rval_add",
    "rval_mul",
    "rval_contains",
    "rval_union",
    "rval_set_add",
    "rval_scale",
    "RvalRule",
    "MAX_RULE",
    "rval_axiom_check",
    "FiniteHyperstructure",
    "check_hypergroup",
    "check_hyperring",
    "check_hyperfield",
    "krasner",
    "signs",
    "quotient_hyperring",
    "iso_search",
    "dump_table",
    "load_table",
    "label_key",
    "MAX_ISO_CARRIER",
]


# -- the valuative hyperfield ------------------------------------------------


@dataclass(frozen=True)
class RvalSet:
    """Either the singleton ``{upper}`` or the interval ``[-inf, upper]``."""

    upper: Trop
    interval: bool = False

    def __post_init__(self):
        if self.interval and self.upper.is_bottom:
            object.__setattr__(self, "interval", False)

    def __contains__(self, z: Trop) -> bool:
        if self.interval:
            return z <= self.upper
        return z == self.upper

    def __str__(self) -> str:
        return f"[-inf,{self.upper}]" if self.interval else f"{{{self.upper}}}"


def singleton(x: Trop) -> RvalSet:
    return RvalSet(x, False)


def down_interval(u: Trop) -> RvalSet:
    return RvalSet(u, True)


def rval_add(x: Trop, y: Trop) -> RvalSet:
    if x == y:
        return down_interval(x)
    return singleton(trop_add(x, y))


def rval_mul(x: Trop, y: Trop) -> Trop:
    return trop_mul(x, y)


Descriptors = tuple  # tuple[RvalSet, ...] in normal form


def rval_contains(s: RvalSet | Iterable[RvalSet], z: Trop) -> bool:
    if isinstance(s, RvalSet):
        return z in s
    return any(z in d for d in s)


def rval_union(parts: Iterable[RvalSet]) -> Descriptors:
    """Normal form of a union: at most one interval, then the singletons above it.

    The interval comes first and the singletons are strictly above its upper
    end, in increasing order.  Two unions are equal as sets exactly when their
    normal forms are equal.
    """
    parts = list(parts)
    uppers = [d.upper for d in parts if d.interval]
    top = max(uppers) if uppers else None
    points = sorted({d.upper for d in parts if not d.interval and (top is None or d.upper > top)})
    head = (down_interval(top),) if top is not None else ()
    return head + tuple(singleton(p) for p in points)


class RvalRule:
    """Hyperaddition on Q ∪ {-inf} together with its extension to intervals.

    ``add_interval(u, z)`` is the union of ``a (+) z`` over every ``a`` in
    ``[-inf, u]`` and ``add_intervals(u, v)`` the union over both intervals;
    they are stated in closed form since the carrier is infinite.
    """

    name = "max"

    def add(self, x: Trop, y: Trop) -> RvalSet:
        return rval_add(x, y)

    def add_interval(self, u: Trop, z: Trop) -> RvalSet:
        # a < z gives {z}; a == z gives [-inf, z]; a > z gives {a}
        if z > u:
            return singleton(z)
        return down_interval(u)

    def add_intervals(self, u: Trop, v: Trop) -> RvalSet:
        return down_interval(max(u, v))

    def pair(self, d: RvalSet, e: RvalSet) -> RvalSet:
        if not d.interval and not e.interval:
            return self.add(d.upper, e.upper)
        if d.interval and e.interval:
            return self.add_intervals(d.upper, e.upper)
        if d.interval:
            return self.add_interval(d.upper, e.upper)
        return self.add_interval(e.upper, d.upper)


MAX_RULE = RvalRule()


def _descr(s) -> Descriptors:
    if isinstance(s, RvalSet):
        return rval_union([s])
    if isinstance(s, Trop):
        return (singleton(s),)
    return rval_union(s)


def rval_set_add(a, b, rule: RvalRule = MAX_RULE) -> Descriptors:
    """Set-extended sum ``A + B``, the union of ``x + y`` over the two sets."""
    return rval_union(rule.pair(d, e) for d in _descr(a) for e in _descr(b))


def rval_scale(s, z: Trop) -> Descriptors:
    """Multiply every element of a set by the scalar ``z``."""
    if z.is_bottom:
        return (singleton(BOTTOM),)
    return rval_union(RvalSet(trop_mul(d.upper, z), d.interval) for d in _descr(s))


def rval_axiom_check(samples: Iterable[Trop], rule: RvalRule = MAX_RULE) -> AxiomReport:
    """Check the hyperfield axioms on every pair and triple drawn from ``samples``."""
    xs = sorted(set(samples))
    finite = [x for x in xs if x.is_finite]
    if BOTTOM not in xs or len(finite) < 3:
        raise ValueError("samples must contain -inf and at least three finite scalars")
    rep = AxiomReport()
    plus = {(x, y): _descr(rule.add(x, y)) for x in xs for y in xs}

    for x, y in itertools.product(xs, repeat=2):
        if plus[x, y] != plus[y, x]:
            rep.fail("commutativity", x, y)
    rep.record("commutativity")

    for x, y, z in itertools.product(xs, repeat=3):
        left = rval_set_add(plus[x, y], z, rule)
        right = rval_set_add(x, plus[y, z], rule)
        if left != right:
            rep.fail("associativity", x, y, z, detail=_fmt_descr(left) + "!=" + _fmt_descr(right))
    rep.record("associativity")

    neutral = [e for e in xs if all(plus[e, x] == (singleton(x),) for x in xs)]
    if neutral != [BOTTOM]:
        bad = next((x for x in xs if plus[BOTTOM, x] != (singleton(x),)), None)
        if bad is not None:
            rep.fail("neutral_element", BOTTOM, bad, detail=f"-inf+{bad}={_fmt_descr(plus[BOTTOM, bad])}")
        else:
            rep.fail("neutral_element", *neutral, detail="neutral element not unique")
    rep.record("neutral_element")

    neg: dict[Trop, Trop] = {}
    for x in xs:
        inverses = [y for y in xs if rval_contains(plus[x, y], BOTTOM)]
        if len(inverses) != 1:
            rep.fail("unique_inverse", x, detail=f"{len(inverses)} candidates")
        else:
            neg[x] = inverses[0]
    rep.record("unique_inverse")

    for x, y, z in itertools.product(xs, repeat=3):
        if not rval_contains(plus[y, z], x):
            continue
        if y not in neg:
            rep.fail("reversibility", x, y, z, detail="no inverse")
        elif not rval_contains(plus[x, neg[y]], z):
            rep.fail("reversibility", x, y, z)
    rep.record("reversibility")

    for x, y, z in itertools.product(xs, repeat=3):
        left = rval_scale(plus[x, y], z)
        right = rval_set_add(trop_mul(z, x), trop_mul(z, y), rule)
        if left != right:
            rep.fail("distributivity", z, x, y, detail=_fmt_descr(left) + "!=" + _fmt_descr(right))
    rep.record("distributivity")

    for x in xs:
        if trop_mul(BOTTOM, x) != BOTTOM:
            rep.fail("absorbing_zero", x)
    rep.record("absorbing_zero")

    for x, y, z in itertools.product(xs, repeat=3):
        if trop_mul(trop_mul(x, y), z) != trop_mul(x, trop_mul(y, z)):
            rep.fail("mul_associativity", x, y, z)
    rep.record("mul_associativity")
    for x in xs:
        if trop_mul(ONE, x) != x:
            rep.fail("mul_identity", x)
    rep.record("mul_identity")
    for x in finite:
        if trop_mul(x, trop_inv(x)) != ONE:
            rep.fail("mul_group", x)
    rep.record("mul_group")
    return rep


def _fmt_descr(ds: Descriptors) -> str:
    return "U".join(str(d) for d in ds)


# -- finite hyperstructures --------------------------------------------------


def label_key(label: str):
    """Sort key ordering labels by the integers they mention, then textually."""
    return ([int(t) for t in re.findall(r"-?\d+", label)], label)


@dataclass(frozen=True, eq=True)
class FiniteHyperstructure:
    """Finite carrier with a hyperaddition table and a multiplication table."""

    carrier: tuple[str, ...]
    add: Mapping[tuple[str, str], frozenset]
    mul: Mapping[tuple[str, str], str]
    zero: str
    one: str

    __hash__ = None  # tables are mappings

    def __post_init__(self):
        carrier = tuple(self.carrier)
        if len(set(carrier)) != len(carrier) or not carrier:
            raise ValueError("carrier must be a nonempty list of distinct labels")
        elems = set(carrier)
        for lab in carrier:
            if not lab or re.search(r"[\s{}]|->", lab):
                raise ValueError(f"bad element label {lab!r}")
        add = {k: frozenset(v) for k, v in dict(self.add).items()}
        mul = dict(self.mul)
        for x, y in itertools.product(carrier, repeat=2):
            if (x, y) not in add:
                raise ValueError(f"addition table missing {x} + {y}")
            if not add[x, y] or not add[x, y] <= elems:
                raise ValueError(f"{x} + {y} must be a nonempty subset of the carrier")
            if mul.get((x, y)) not in elems:
                raise ValueError(f"multiplication table missing or invalid at {x} * {y}")
        if len(add) != len(carrier) ** 2 or len(mul) != len(carrier) ** 2:
            raise ValueError("tables mention elements outside the carrier")
        if self.zero not in elems or self.one not in elems:
            raise ValueError("zero and one must belong to the carrier")
        if self.zero == self.one:
            raise ValueError("zero and one must differ")
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "mul", mul)

    def plus(self, x: str, y: str) -> frozenset:
        return self.add[x, y]

    def times(self, x: str, y: str) -> str:
        return self.mul[x, y]

    def set_plus(self, a: Iterable[str], b: Iterable[str]) -> frozenset:
        b = list(b)
        return frozenset().union(*(self.add[x, y] for x in a for y in b))

    def negatives(self, x: str) -> list[str]:
        return [y for y in self.carrier if self.zero in self.add[x, y]]

    def __len__(self) -> int:
        return len(self.carrier)


def _fmt_set(s: Iterable[str]) -> str:
    return "{" + ",".join(sorted(s, key=label_key)) + "}"


def check_hypergroup(h: FiniteHyperstructure) -> AxiomReport:
    """Exhaustive check of the five canonical hypergroup axioms."""
    rep = AxiomReport()
    C = h.carrier
    for x, y in itertools.product(C, repeat=2):
        if h.plus(x, y) != h.plus(y, x):
            rep.fail("commutativity", x, y, detail=f"{_fmt_set(h.plus(x, y))}!={_fmt_set(h.plus(y, x))}")
    rep.record("commutativity")

    for x, y, z in itertools.product(C, repeat=3):
        left = h.set_plus(h.plus(x, y), [z])
        right = h.set_plus([x], h.plus(y, z))
        if left != right:
            rep.fail("associativity", x, y, z, detail=f"{_fmt_set(left)}!={_fmt_set(right)}")
    rep.record("associativity")

    neutral = [e for e in C if all(h.plus(e, x) == {x} == h.plus(x, e) for x in C)]
    if neutral != [h.zero]:
        bad = next((x for x in C if not h.plus(h.zero, x) == {x} == h.plus(x, h.zero)), None)
        if bad is not None:
            rep.fail("neutral_element", h.zero, bad, detail=f"{h.zero}+{bad}={_fmt_set(h.plus(h.zero, bad))}")
        else:
            rep.fail("neutral_element", *neutral, detail="neutral element not unique")
    rep.record("neutral_element")

    for x in C:
        ys = h.negatives(x)
        if len(ys) != 1:
            rep.fail("unique_inverse", x, detail=f"candidates={_fmt_set(ys)}")
    rep.record("unique_inverse")

    for x, y, z in itertools.product(C, repeat=3):
        if x not in h.plus(y, z):
            continue
        negs = h.negatives(y)
        if len(negs) != 1:
            rep.fail("reversibility", x, y, z, detail=f"{y} has no unique inverse")
        elif z not in h.plus(x, negs[0]):
            rep.fail("reversibility", x, y, z, detail=f"{z} not in {x}+{negs[0]}")
    rep.record("reversibility")
    return rep


def check_hyperring(h: FiniteHyperstructure) -> AxiomReport:
    """Hypergroup axioms plus the commutative monoid, distributivity and zero laws."""
    rep = check_hypergroup(h)
    C = h.carrier
    for x, y in itertools.product(C, repeat=2):
        if h.times(x, y) != h.times(y, x):
            rep.fail("mul_commutativity", x, y)
    rep.record("mul_commutativity")

    for x, y, z in itertools.product(C, repeat=3):
        if h.times(h.times(x, y), z) != h.times(x, h.times(y, z)):
            rep.fail("mul_associativity", x, y, z)
    rep.record("mul_associativity")

    for x in C:
        if h.times(h.one, x) != x or h.times(x, h.one) != x:
            rep.fail("mul_identity", h.one, x)
    rep.record("mul_identity")

    for x, y, z in itertools.product(C, repeat=3):
        left = frozenset(h.times(x, w) for w in h.plus(y, z))
        right = h.set_plus([h.times(x, y)], [h.times(x, z)])
        if left != right:
            direction = "left not in right" if not left <= right else "right not in left"
            rep.fail("distributivity", x, y, z, detail=f"{_fmt_set(left)}!={_fmt_set(right)} ({direction})")
    rep.record("distributivity")

    for x in C:
        if h.times(h.zero, x) != h.zero or h.times(x, h.zero) != h.zero:
            rep.fail("absorbing_zero", h.zero, x, detail=f"{h.zero}*{x}={h.times(h.zero, x)}")
    rep.record("absorbing_zero")
    return rep


def check_hyperfield(h: FiniteHyperstructure) -> AxiomReport:
    """Hyperring axioms plus: the nonzero elements form a multiplicative group."""
    rep = check_hyperring(h)
    nonzero = [x for x in h.carrier if x != h.zero]
    for x in nonzero:
        if any(h.times(x, y) == h.zero for y in nonzero):
            rep.fail("mul_group", x, detail="zero divisor")
        elif not any(h.times(x, y) == h.one for y in nonzero):
            rep.fail("mul_group", x, detail="no inverse")
    rep.record("mul_group")
    return rep


def _from_rules(carrier, zero, one, add_rule, mul_rule) -> FiniteHyperstructure:
    add = {(x, y): frozenset(add_rule(x, y)) for x in carrier for y in carrier}
    mul = {(x, y): mul_rule(x, y) for x in carrier for y in carrier}
    return FiniteHyperstructure(tuple(carrier), add, mul, zero, one)


def krasner() -> FiniteHyperstructure:
    """The Krasner hyperfield {0, 1} with 1 + 1 = {0, 1}."""

    def add(x, y):
        if x == "0":
            return {y}
        if y == "0":
            return {x}
        return {"0", "1"}

    return _from_rules(("0", "1"), "0", "1", add, lambda x, y: "1" if x == y == "1" else "0")


def signs() -> FiniteHyperstructure:
    """The hyperfield of signs {-1, 0, 1}; 1 + (-1) is everything."""

    def add(x, y):
        if x == "0":
            return {y}
        if y == "0" or x == y:
            return {x}
        return {"-1", "0", "1"}

    def mul(x, y):
        return str(int(x) * int(y))

    return _from_rules(("-1", "0", "1"), "0", "1", add, mul)


def _unit_closure(n: int, gens: Iterable[int]) -> frozenset[int]:
    group = {1 % n}
    frontier = list(group)
    gens = [g % n for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % n
            if y not in group:
                group.add(y)
                frontier.append(y)
    return frozenset(group)


def quotient_hyperring(modulus: int, gens: Sequence[int] = ()) -> FiniteHyperstructure:
    """The quotient hyperring (Z/n)/G for the unit subgroup G generated by ``gens``.

    Elements are the orbits of G acting by multiplication.  Singleton orbits
    are labelled by their residue and larger ones by the sorted residue list,
    e.g. ``[1,3]``.  Passing every unit of Z/p gives p/p^x.
    """
    n = int(modulus)
    if n < 2:
        raise ValueError("modulus must be at least 2")
    for g in gens:
        if math.gcd(int(g), n) != 1:
            raise ValueError(f"{g} is not a unit modulo {n}")
    G = _unit_closure(n, gens)
    orbit_of: dict[int, frozenset[int]] = {}
    for x in range(n):
        orbit_of[x] = frozenset(x * g % n for g in G)
    orbits = sorted(set(orbit_of.values()), key=min)

    def label(orb):
        rs = sorted(orb)
        return str(rs[0]) if len(rs) == 1 else "[" + ",".join(map(str, rs)) + "]"

    name = {orb: label(orb) for orb in orbits}
    rep = {name[orb]: min(orb) for orb in orbits}

    def add(x, y):
        a, b = rep[x], rep[y]
        return {name[orbit_of[(a * g + b * k) % n]] for g in G for k in G}

    def mul(x, y):
        return name[orbit_of[rep[x] * rep[y] % n]]

    carrier = [name[orb] for orb in orbits]
    return _from_rules(carrier, name[orbit_of[0]], name[orbit_of[1 % n]], add, mul)


MAX_ISO_CARRIER = 8


def iso_search(h1: FiniteHyperstructure, h2: FiniteHyperstructure) -> dict[str, str] | None:
    """Find a bijection carrying both tables of ``h1`` onto those of ``h2``.

    Zero goes to zero and one to one; sums must map to sums exactly.  Returns
    None when no such bijection exists.
    """
    if max(len(h1), len(h2)) > MAX_ISO_CARRIER:
        raise ValueError(f"iso_search is limited to carriers of at most {MAX_ISO_CARRIER} elements")
    if len(h1) != len(h2):
        return None
    rest1 = [x for x in h1.carrier if x not in (h1.zero, h1.one)]
    rest2 = [x for x in h2.carrier if x not in (h2.zero, h2.one)]
    for perm in itertools.permutations(rest2):
        phi = {h1.zero: h2.zero, h1.one: h2.one, **dict(zip(rest1, perm))}
        if all(
            phi[h1.times(x, y)] == h2.times(phi[x], phi[y])
            and frozenset(phi[z] for z in h1.plus(x, y)) == h2.plus(phi[x], phi[y])
            for x in h1.carrier
            for y in h1.carrier
        ):
            return phi
    return None


# -- table files -------------------------------------------------------------


def dump_table(h: FiniteHyperstructure) -> str:
    """Serialize to the line-oriented table format, sorted throughout."""
    C = sorted(h.carrier, key=label_key)
    lines = [f"carrier: {' '.join(C)}", f"zero: {h.zero}", f"one: {h.one}", "add:"]
    lines += [f"{x} {y} -> {_fmt_set(h.plus(x, y))}" for x in C for y in C]
    lines.append("mul:")
    lines += [f"{x} {y} -> {h.times(x, y)}" for x in C for y in C]
    return "\n".join(lines) + "\n"


def _split_top(body: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            parts.append(cur.strip())
            cur = ""
            continue
        depth += (ch == "[") - (ch == "]")
        cur += ch
    if cur.strip():
        parts.append(cur.strip())
    return parts


def load_table(text: str) -> FiniteHyperstructure:
    header: dict[str, str] = {}
    add: dict = {}
    mul: dict = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("add:", "mul:"):
            section = line[:-1]
            continue
        if section is None:
            key, sep, val = line.partition(":")
            if not sep or key.strip() not in ("carrier", "zero", "one"):
                raise ValueError(f"line {lineno}: expected carrier/zero/one header, got {raw!r}")
            header[key.strip()] = val.strip()
            continue
        lhs, sep, rhs = line.partition("->")
        pair = lhs.split()
        if not sep or len(pair) != 2:
            raise ValueError(f"line {lineno}: expected 'x y -> value', got {raw!r}")
        rhs = rhs.strip()
        key = (pair[0], pair[1])
        if section == "add":
            if not (rhs.startswith("{") and rhs.endswith("}")):
                raise ValueError(f"line {lineno}: a sum must be written as a set {{...}}")
            value = frozenset(_split_top(rhs[1:-1]))
            table = add
        else:
            value, table = rhs, mul
        if key in table:
            raise ValueError(f"line {lineno}: duplicate entry for {key[0]} {key[1]}")
        table[key] = value
    missing = {"carrier", "zero", "one"} - header.keys()
    if missing:
        raise ValueError(f"missing header field(s): {', '.join(sorted(missing))}")
    return FiniteHyperstructure(tuple(header["carrier"].split()), add, mul, header["zero"], header["one"])
