"""Deliberately corrupted hyperstructure tables with the axiom each must break.

Each case is (name, table, level, expected) where ``expected`` maps an axiom
name to the witness tuple the checker must report, or to None when only the
failure itself is pinned down.
"""
from __future__ import annotations

from tropval.hyper import (
    FiniteHyperstructure,
    check_hyperfield,
    check_hyperring,
    krasner,
    quotient_hyperring,
    signs,
)

LEVELS = {"hyperring": check_hyperring, "hyperfield": check_hyperfield}


def tweak(h, add=None, mul=None, zero=None, one=None) -> FiniteHyperstructure:
    table = dict(h.add)
    table.update({k: frozenset(v) for k, v in (add or {}).items()})
    prod = dict(h.mul)
    prod.update(mul or {})
    return FiniteHyperstructure(h.carrier, table, prod, zero or h.zero, one or h.one)


def mutation_suite():
    K, S, Z4 = krasner(), signs(), quotient_hyperring(4, [3])
    return [
        ("krasner 1+1={1}", tweak(K, add={("1", "1"): {"1"}}), "hyperfield",
         {"unique_inverse": ("1",)}),
        ("krasner zero/one swapped", tweak(K, zero="1", one="0"), "hyperfield",
         {"absorbing_zero": ("1", "0")}),
        ("krasner 1+0={0,1}", tweak(K, add={("1", "0"): {"0", "1"}, ("0", "1"): {"0", "1"}}), "hyperfield",
         {"neutral_element": ("0", "1")}),
        ("krasner lopsided 1+0", tweak(K, add={("1", "0"): {"0", "1"}}), "hyperfield",
         {"commutativity": ("0", "1")}),
        ("signs 1+(-1)={0}", tweak(S, add={("1", "-1"): {"0"}, ("-1", "1"): {"0"}}), "hyperfield",
         {"associativity": ("-1", "-1", "1"), "reversibility": None}),
        ("signs (-1)(-1)=-1", tweak(S, mul={("-1", "-1"): "-1"}), "hyperfield",
         {"distributivity": ("-1", "-1", "1"), "mul_group": ("-1",)}),
        ("krasner 1*1=0", tweak(K, mul={("1", "1"): "0"}), "hyperfield",
         {"mul_identity": ("1", "1"), "mul_group": None}),
        ("signs 1+1={0,1}", tweak(S, add={("1", "1"): {"0", "1"}}), "hyperfield",
         {"unique_inverse": ("1",)}),
        ("krasner 0+0={0,1}", tweak(K, add={("0", "0"): {"0", "1"}}), "hyperfield",
         {"neutral_element": ("0", "0"), "associativity": None}),
        ("Z/4 lopsided product", tweak(Z4, mul={("[1,3]", "2"): "0"}), "hyperring",
         {"mul_commutativity": ("[1,3]", "2")}),
    ]


def check_mutation(table, level, expected) -> list[str]:
    """Problems with the checker's verdict on one corrupted table (empty if right)."""
    rep = LEVELS[level](table)
    problems = []
    for axiom, elements in expected.items():
        w = rep.witness(axiom)
        if w is None:
            problems.append(f"{axiom} did not fail")
        elif elements is not None and w.elements != elements:
            problems.append(f"{axiom} witness {w.elements} != {elements}")
    return problems
