import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mutations import check_mutation, mutation_suite, tweak
from tropval.hyper import (
    MAX_ISO_CARRIER,
    RvalRule,
    RvalSet,
    check_hyperfield,
    check_hypergroup,
    check_hyperring,
    down_interval,
    dump_table,
    iso_search,
    krasner,
    load_table,
    quotient_hyperring,
    rval_add,
    rval_axiom_check,
    rval_contains,
    rval_mul,
    rval_set_add,
    rval_union,
    signs,
    singleton,
)
from tropval.trop_core import BOTTOM, Trop

B = BOTTOM
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=2)
scalars = st.one_of(st.just(B), rationals.map(Trop))
descriptors = st.builds(RvalSet, scalars, st.booleans())


def S(*xs):
    return [B if x is None else Trop(x) for x in xs]


# -- R_{+,val} -----------------------------------------------------------------


@pytest.mark.parametrize(
    "x,y,expected",
    [
        (Trop(3), Trop(5), singleton(Trop(5))),
        (Trop(2), Trop(2), down_interval(Trop(2))),
        (B, Trop(F(-1, 3)), singleton(Trop(F(-1, 3)))),
        (B, B, singleton(B)),
    ],
)
def test_rval_add(x, y, expected):
    assert rval_add(x, y) == expected


def test_rval_mul():
    assert rval_mul(Trop(1), Trop(2)) == Trop(3)
    assert rval_mul(B, Trop(7)) == B
    assert rval_mul(Trop(0), Trop(F(5, 2))) == Trop(F(5, 2))


def test_interval_at_bottom_is_a_singleton():
    assert down_interval(B) == singleton(B)


@pytest.mark.parametrize(
    "s,z,expected",
    [
        (down_interval(Trop(2)), Trop(0), True),
        (down_interval(Trop(2)), Trop(3), False),
        (down_interval(Trop(2)), B, True),
        (singleton(Trop(5)), Trop(5), True),
        (singleton(Trop(5)), Trop(4), False),
    ],
)
def test_rval_contains(s, z, expected):
    assert rval_contains(s, z) is expected
    assert rval_contains([singleton(Trop(100)), s], z) is expected


@pytest.mark.parametrize("samples", [S(None, 0, 1, 2), S(None, -1, 0, F(5, 2), 7)])
def test_rval_axioms_hold(samples):
    rep = rval_axiom_check(samples)
    assert rep.ok, str(rep)
    assert len(rep.results) == 10


def test_rval_axiom_check_needs_enough_samples():
    with pytest.raises(ValueError):
        rval_axiom_check(S(0, 1, 2))
    with pytest.raises(ValueError):
        rval_axiom_check(S(None, 1, 2))


class MinRule(RvalRule):
    """Max replaced by min everywhere; intervals become [-inf, min]."""

    name = "min"

    def add(self, x, y):
        return down_interval(x) if x == y else singleton(min(x, y))

    def add_interval(self, u, z):
        return down_interval(min(u, z))

    def add_intervals(self, u, v):
        return down_interval(min(u, v))


def test_min_rule_is_caught():
    rep = rval_axiom_check(S(None, 0, 1, 2), MinRule())
    assert not rep.ok
    w = rep.witness("neutral_element")
    assert w is not None and w.elements[0] == B


def _member_oracle(p, d, z):
    """Is p in the union of a (+) z over a in d?  Brute force over a small grid.

    The grid holds every value at which the answer can change, so this is
    exact without relying on the closed forms in RvalRule.
    """
    grid = {B, p, z, d.upper}
    cands = [a for a in grid if a in d]
    return any(p in rval_add(a, z) for a in cands)


@given(descriptors, scalars, scalars)
def test_interval_extension_matches_brute_force(d, z, p):
    got = rval_set_add(d, z)
    assert rval_contains(got, p) == _member_oracle(p, d, z)


@given(scalars, scalars, scalars, scalars)
def test_set_sum_is_associative_on_probes(x, y, z, p):
    left = rval_set_add(rval_add(x, y), z)
    right = rval_set_add(x, rval_add(y, z))
    assert left == right
    assert rval_contains(left, p) == rval_contains(right, p)


@given(scalars, scalars, scalars)
def test_reversibility_self_inverse(x, y, z):
    if rval_contains(rval_add(x, y), z):
        assert rval_contains(rval_add(z, x), y)


def _probes(parts):
    pts = {B}
    for d in parts:
        if d.upper.is_finite:
            pts |= {d.upper, Trop(d.upper.value - F(1, 2)), Trop(d.upper.value + F(1, 2))}
    return sorted(pts)


@given(st.lists(descriptors, max_size=6))
def test_union_normal_form_preserves_membership(parts):
    nf = rval_union(parts)
    for p in _probes(parts):
        assert rval_contains(nf, p) == any(p in d for d in parts)
    assert rval_union(nf) == nf
    intervals = [d for d in nf if d.interval]
    assert len(intervals) <= 1
    assert not intervals or nf[0].interval
    uppers = [d.upper for d in nf]
    assert uppers == sorted(set(uppers))


@given(st.lists(descriptors, min_size=1, max_size=6), st.randoms(use_true_random=False))
def test_union_normal_form_is_canonical(parts, rnd):
    nf = rval_union(parts)
    noisy = list(parts) * 2
    top = next((d.upper for d in nf if d.interval), None)
    if top is not None and top.is_finite:
        # anything already inside the interval is redundant
        noisy += [singleton(Trop(top.value - rnd.randint(0, 3))), down_interval(Trop(top.value - 1)), singleton(B)]
    rnd.shuffle(noisy)
    assert rval_union(noisy) == nf


# -- finite hyperstructures ----------------------------------------------------


def test_builtin_tables():
    K, Sg = krasner(), signs()
    assert K.plus("1", "1") == {"0", "1"}
    assert Sg.plus("1", "-1") == {"-1", "0", "1"}
    assert Sg.plus("1", "1") == {"1"}
    assert Sg.times("-1", "-1") == "1"


@pytest.mark.parametrize("h", [krasner(), signs()], ids=["K", "S"])
def test_builtins_are_hyperfields(h):
    assert check_hypergroup(h).ok
    rep = check_hyperfield(h)
    assert rep.ok, str(rep)
    assert set(rep.results) >= {
        "commutativity", "associativity", "neutral_element", "unique_inverse",
        "reversibility", "distributivity", "absorbing_zero",
    }


def test_no_inverse_for_idempotent_one():
    h = tweak(krasner(), add={("1", "1"): {"1"}})
    rep = check_hypergroup(h)
    assert rep.witness("unique_inverse").elements == ("1",)


def test_swapped_krasner_fails_absorbing_zero():
    h = tweak(krasner(), zero="1", one="0")
    w = check_hyperring(h).witness("absorbing_zero")
    assert w is not None and w.elements[0] == "1"


@pytest.mark.parametrize("name,table,level,expected", mutation_suite(), ids=[c[0] for c in mutation_suite()])
def test_mutation_suite(name, table, level, expected):
    assert check_mutation(table, level, expected) == []


def test_distributivity_direction_is_reported():
    h = tweak(signs(), mul={("-1", "-1"): "-1"})
    w = check_hyperring(h).witness("distributivity")
    assert "left not in right" in w.detail


def test_table_validation():
    K = krasner()
    with pytest.raises(ValueError):
        tweak(K, add={("1", "1"): set()})
    with pytest.raises(ValueError):
        tweak(K, add={("1", "1"): {"2"}})
    with pytest.raises(ValueError):
        tweak(K, zero="1", one="1")
    add = dict(K.add)
    del add["1", "0"]
    with pytest.raises(ValueError):
        type(K)(K.carrier, add, K.mul, "0", "1")


# -- quotients -----------------------------------------------------------------


def test_f3_mod_units_is_krasner():
    h = quotient_hyperring(3, [2])
    assert h.carrier == ("0", "[1,2]")
    assert check_hyperfield(h).ok
    assert iso_search(h, krasner()) == {"0": "0", "[1,2]": "1"}


def test_trivial_subgroup_gives_the_field():
    h = quotient_hyperring(2, [])
    assert h.carrier == ("0", "1")
    assert all(len(h.plus(x, y)) == 1 for x in h.carrier for y in h.carrier)
    assert h.plus("1", "1") == {"0"}
    assert check_hyperfield(h).ok


def test_z4_mod_units():
    h = quotient_hyperring(4, [3])
    assert h.carrier == ("0", "[1,3]", "2")
    assert h.plus("[1,3]", "[1,3]") == {"0", "2"}
    assert h.plus("[1,3]", "2") == {"[1,3]"}
    assert h.times("2", "2") == "0"
    assert check_hyperring(h).ok
    # 2 is a zero divisor, so this is not a hyperfield
    assert not check_hyperfield(h).passed("mul_group")


def test_z4_sums_by_enumeration():
    # every representative sum a*x + b*y with a, b in {1, 3}
    h = quotient_hyperring(4, [3])
    orbit = {0: "0", 1: "[1,3]", 3: "[1,3]", 2: "2"}
    for x, xr in (("0", 0), ("[1,3]", 1), ("2", 2)):
        for y, yr in (("0", 0), ("[1,3]", 1), ("2", 2)):
            want = {orbit[(a * xr + b * yr) % 4] for a in (1, 3) for b in (1, 3)}
            assert h.plus(x, y) == want


def test_non_unit_generator_is_rejected():
    with pytest.raises(ValueError, match="not a unit"):
        quotient_hyperring(6, [2])
    with pytest.raises(ValueError):
        quotient_hyperring(1, [])


@pytest.mark.parametrize("n", range(2, 13))
def test_every_quotient_is_a_hyperring(n):
    rng = random.Random(n)
    units = [u for u in range(1, n) if F(u, n).denominator == n]
    for _ in range(4):
        gens = rng.sample(units, rng.randint(0, len(units)))
        rep = check_hyperring(quotient_hyperring(n, gens))
        assert rep.ok, (n, gens, str(rep))


@pytest.mark.parametrize("q", [3, 5, 7])
def test_field_mod_units_is_krasner(q):
    h = quotient_hyperring(q, range(1, q))
    assert check_hyperring(h).ok
    phi = iso_search(h, krasner())
    assert phi is not None and phi[h.zero] == "0"


# -- isomorphisms and files ----------------------------------------------------


def test_iso_search_examples():
    assert iso_search(krasner(), signs()) is None
    for h in (krasner(), signs(), quotient_hyperring(5, [4])):
        assert iso_search(h, h) == {x: x for x in h.carrier}


def test_iso_search_finds_nontrivial_relabelling():
    # F5 / {1,4}: orbits 0, [1,4], [2,3]
    h = quotient_hyperring(5, [4])
    text = dump_table(h).replace("[1,4]", "a").replace("[2,3]", "b")
    renamed = load_table(text)
    assert iso_search(h, renamed) == {"0": "0", "[1,4]": "a", "[2,3]": "b"}
    # 1 + 1 = 2 lands in the other square class, unlike 1 + 1 = {1} in S
    assert h.plus("[1,4]", "[1,4]") == {"0", "[2,3]"}
    assert iso_search(h, signs()) is None


def test_iso_search_rejects_non_isomorphic_same_size():
    assert iso_search(quotient_hyperring(3, []), krasner()) is None
    assert iso_search(quotient_hyperring(4, [3]), signs()) is None


def test_iso_search_size_limit():
    big = quotient_hyperring(MAX_ISO_CARRIER + 1, [])
    with pytest.raises(ValueError, match="at most"):
        iso_search(big, big)


def test_dump_format():
    assert dump_table(krasner()) == (
        "carrier: 0 1\nzero: 0\none: 1\nadd:\n"
        "0 0 -> {0}\n0 1 -> {1}\n1 0 -> {1}\n1 1 -> {0,1}\n"
        "mul:\n0 0 -> 0\n0 1 -> 0\n1 0 -> 0\n1 1 -> 1\n"
    )


@pytest.mark.parametrize(
    "h", [krasner(), signs(), quotient_hyperring(4, [3]), quotient_hyperring(7, [2]), quotient_hyperring(8, [3, 5])]
)
def test_dump_load_roundtrip(h):
    text = dump_table(h)
    back = load_table(text)
    assert dump_table(back) == text
    assert back.add == h.add and back.mul == h.mul and (back.zero, back.one) == (h.zero, h.one)


@pytest.mark.parametrize(
    "text",
    [
        "zero: 0\none: 1\nadd:\nmul:\n",
        "carrier: 0 1\nzero: 0\none: 1\nadd:\n0 0 -> 0\n",
        "carrier: 0 1\nzero: 0\none: 1\nadd:\n0 0\n",
        dump_table(krasner()) + "1 1 -> 1\n",
    ],
)
def test_load_rejects_malformed(text):
    with pytest.raises(ValueError):
        load_table(text)
