"""Finite-support lotteries with exact rational weights.

All arithmetic uses :class:`fractions.Fraction`; no floating point enters
the engine anywhere.  Lotteries are immutable values: hashable, comparable
by their weight mapping, safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AlphaOutOfRange,
    DegeneratePair,
    EmptySupport,
    NegativeWeight,
    NotNormalized,
)
from .relation import check_id

__all__ = ["Lottery", "make_lottery", "convex_combine", "decompose"]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Lottery:
    """A probability distribution with finite, nonempty support.

    ``entries`` is sorted by alternative id; every weight is a strictly
    positive Fraction and the weights sum to exactly 1.  Construct through
    :func:`make_lottery` or :meth:`degenerate`.
    """

    entries: tuple[tuple[str, Fraction], ...]

    @classmethod
    def degenerate(cls, alternative: str) -> "Lottery":
        """The lottery assigning probability 1 to a single alternative."""
        check_id(alternative)
        return cls(entries=((alternative, ONE),))

    def weight(self, alternative: str) -> Fraction:
        for a, w in self.entries:
            if a == alternative:
                return w
        return ZERO

    def support(self) -> frozenset[str]:
        return frozenset(a for a, _ in self.entries)

    def items(self) -> tuple[tuple[str, Fraction], ...]:
        return self.entries

    def __str__(self) -> str:
        return "{" + ", ".join(f"{a}@{w}" for a, w in self.entries) + "}"


def make_lottery(pairs, normalize: bool = False) -> Lottery:
    """Build a lottery from (alternative, weight) pairs.

    Duplicate alternatives are summed and zero entries dropped.  Without
    ``normalize`` the weights must sum to exactly 1; with it they are
    divided by their sum.
    """
    acc: dict[str, Fraction] = {}
    for alternative, weight in pairs:
        check_id(alternative)
        w = Fraction(weight)
        if w < 0:
            raise NegativeWeight(alternative, w)
        acc[alternative] = acc.get(alternative, ZERO) + w
    total = sum(acc.values(), ZERO)
    if total == 0:
        raise EmptySupport()
    if normalize:
        acc = {a: w / total for a, w in acc.items()}
    elif total != 1:
        raise NotNormalized(total)
    entries = tuple(sorted((a, w) for a, w in acc.items() if w > 0))
    return Lottery(entries=entries)


def convex_combine(alpha, f: Lottery, g: Lottery) -> Lottery:
    """Pointwise mixture alpha*f + (1-alpha)*g."""
    a = Fraction(alpha)
    if not (0 <= a <= 1):
        raise AlphaOutOfRange(a)
    weights: dict[str, Fraction] = {}
    for alt, w in f.entries:
        weights[alt] = a * w
    for alt, w in g.entries:
        weights[alt] = weights.get(alt, ZERO) + (1 - a) * w
    entries = tuple(sorted((alt, w) for alt, w in weights.items() if w > 0))
    return Lottery(entries=entries)


def decompose(h: Lottery, f: Lottery, g: Lottery):
    """Recover alpha in the open interval (0, 1) with h = alpha*f + (1-alpha)*g.

    Returns None when no such proper mixture coefficient exists (boundary
    decompositions h == f or h == g are deliberately excluded).  Raises
    :class:`DegeneratePair` when f == g.
    """
    if f == g:
        raise DegeneratePair()
    pivot = None
    for alt in f.support() | g.support():
        if f.weight(alt) != g.weight(alt):
            pivot = alt
            break
    # f != g guarantees a pivot exists
    fa, ga = f.weight(pivot), g.weight(pivot)
    alpha = (h.weight(pivot) - ga) / (fa - ga)
    if not (0 < alpha < 1):
        return None
    for alt in f.support() | g.support() | h.support():
        if h.weight(alt) != alpha * f.weight(alt) + (1 - alpha) * g.weight(alt):
            return None
    return alpha
