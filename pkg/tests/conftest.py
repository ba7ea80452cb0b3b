"""Shared generators for randomized and exhaustive test instances."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from partialpref.lottery import Lottery, make_lottery
from partialpref.relation import BaseRelation, FactKind, PrefFact, build_base_relation


def alt_names(n: int) -> list[str]:
    return [f"a{i}" for i in range(n)]


def random_relation(rng: random.Random, n: int) -> BaseRelation:
    """A random partial preorder on n alternatives (weak facts only)."""
    alts = alt_names(n)
    facts = []
    for a, b in itertools.permutations(alts, 2):
        r = rng.random()
        if r < 0.18:
            facts.append(PrefFact(FactKind.WEAK, a, b))
        elif r < 0.22:
            facts.append(PrefFact(FactKind.EQUIV, a, b))
    return build_base_relation(facts, extra_universe=set(alts))


def all_relations(n: int) -> list[BaseRelation]:
    """Every preorder on n alternatives, by brute-force transitivity filter."""
    alts = alt_names(n)
    free = [(a, b) for a, b in itertools.permutations(alts, 2)]
    out = []
    for bits in range(1 << len(free)):
        weak = {(a, a) for a in alts}
        for i, pair in enumerate(free):
            if bits >> i & 1:
                weak.add(pair)
        if any(
            (a, c) not in weak for (a, b) in weak for (b2, c) in weak if b == b2
        ):
            continue
        out.append(BaseRelation(universe=frozenset(alts), weak=frozenset(weak)))
    return out


def grid_lotteries(alts: list[str], denom: int) -> list[Lottery]:
    """All lotteries over alts whose weights are multiples of 1/denom."""
    n = len(alts)
    out = []
    for split in itertools.combinations(range(denom + n - 1), n - 1):
        parts = []
        prev = -1
        for s in split:
            parts.append(s - prev - 1)
            prev = s
        parts.append(denom + n - 2 - prev)
        pairs = [(a, Fraction(k, denom)) for a, k in zip(alts, parts) if k > 0]
        out.append(make_lottery(pairs))
    return out


def random_grid_lottery(rng: random.Random, alts: list[str], denom: int) -> Lottery:
    """A random lottery with weights in multiples of 1/denom."""
    cuts = sorted(rng.randrange(denom + 1) for _ in range(len(alts) - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [denom])]
    pairs = [(a, Fraction(k, denom)) for a, k in zip(alts, parts) if k > 0]
    if not pairs:  # pragma: no cover - parts always sum to denom > 0
        pairs = [(alts[0], Fraction(1))]
    return make_lottery(pairs)


def eu_utility(rng: random.Random, alts: list[str]) -> dict[str, int]:
    return {a: rng.randrange(-20, 21) for a in alts}


def lottery_utility(lot: Lottery, utility: dict[str, int]) -> Fraction:
    return sum((w * utility[a] for a, w in lot.items()), Fraction(0))


@pytest.fixture
def rng():
    return random.Random(20260823)
