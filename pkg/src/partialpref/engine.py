"""Derived judgments between lotteries.

Lifts the base preorder on alternatives to lottery pairs:

* ``dominates`` — every support pair weakly improves, so f <= g;
* ``shift_reachable`` — g is obtainable from f by moving probability mass
  onto strictly preferred alternatives, so f < g; decided by exact
  max-flow feasibility with the strict pairs as edges;
* ``compare`` — the set of judgments not refuted by the elimination rules
  R1-R5 (an over-approximation: the true judgment of any admissible
  extension of the base relation is always a member);
* ``saturate`` — least fixpoint of the mixture derivation rules over a
  finite lottery family;
* ``maximal_filter`` — keeps the offers not certainly strictly dominated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegeneratePair, DuplicateOfferName
from .lottery import Lottery, convex_combine, decompose
from .relation import KIND_INDEX, BaseRelation, RelKind

__all__ = [
    "AdmissibleSet",
    "TransportPlan",
    "DerivedFacts",
    "Derivation",
    "cross_profile",
    "dominates",
    "shift_reachable",
    "compare",
    "saturate",
    "maximal_filter",
]

ZERO = Fraction(0)

FULL_SET = frozenset(RelKind)


@dataclass(frozen=True)
class AdmissibleSet:
    """Nonempty subset of the four judgment symbols plus rule provenance."""

    members: frozenset[RelKind]
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.members:
            raise ValueError("admissible set must be nonempty")

    def sorted_members(self) -> list[RelKind]:
        return sorted(self.members, key=KIND_INDEX.__getitem__)

    def mirror(self) -> "AdmissibleSet":
        return AdmissibleSet(
            members=frozenset(k.mirror() for k in self.members),
            provenance=self.provenance,
        )


@dataclass(frozen=True)
class TransportPlan:
    """Witness that g is reachable from f by strictly improving shifts.

    ``moves`` maps (source, target) to positive mass; row sums equal f's
    weights, column sums equal g's weights, and every off-diagonal move
    goes to a strictly preferred alternative.
    """

    moves: tuple[tuple[tuple[str, str], Fraction], ...]

    def move_dict(self) -> dict[tuple[str, str], Fraction]:
        return dict(self.moves)

    def row_sums(self) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for (src, _), mass in self.moves:
            out[src] = out.get(src, ZERO) + mass
        return out

    def col_sums(self) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for (_, dst), mass in self.moves:
            out[dst] = out.get(dst, ZERO) + mass
        return out


def cross_profile(rel: BaseRelation, f: Lottery, g: Lottery):
    """Classify every pair in supp(f) x supp(g)."""
    return {
        (a, b): rel.classify(a, b)
        for a in sorted(f.support())
        for b in sorted(g.support())
    }


def dominates(rel: BaseRelation, f: Lottery, g: Lottery) -> bool:
    """True iff every support pair of (f, g) is Less or Equiv, hence f <= g."""
    profile = cross_profile(rel, f, g)
    return all(k in (RelKind.LESS, RelKind.EQUIV) for k in profile.values())


def _max_flow(sources: dict[str, Fraction], sinks: dict[str, Fraction], edges):
    """Exact-rational max flow on a bipartite source/sink excess network.

    Returns (value, flow) where flow maps (src, dst) to mass.  Plain
    BFS augmenting paths; instances are tiny.
    """
    residual: dict[tuple[str, str], Fraction] = {}
    total = sum(sources.values(), ZERO)
    S, T = ("#src",), ("#snk",)
    adj: dict[object, list[object]] = {S: [], T: []}

    def add_edge(u, v, cap):
        residual[(u, v)] = residual.get((u, v), ZERO) + cap
        residual.setdefault((v, u), ZERO)
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)

    for a, excess in sources.items():
        add_edge(S, ("x", a), excess)
    for b, deficit in sinks.items():
        add_edge(("y", b), T, deficit)
    for a, b in edges:
        add_edge(("x", a), ("y", b), total)

    value = ZERO
    while True:
        parent = {S: None}
        queue = [S]
        while queue and T not in parent:
            u = queue.pop(0)
            for v in adj.get(u, ()):
                if v not in parent and residual.get((u, v), ZERO) > 0:
                    parent[v] = u
                    queue.append(v)
        if T not in parent:
            break
        # bottleneck along the path
        path = []
        v = T
        while parent[v] is not None:
            u = parent[v]
            path.append((u, v))
            v = u
        bottleneck = min(residual[e] for e in path)
        for u, v in path:
            residual[(u, v)] -= bottleneck
            residual[(v, u)] += bottleneck
        value += bottleneck

    flow: dict[tuple[str, str], Fraction] = {}
    for a in sources:
        for b in sinks:
            back = residual.get((("y", b), ("x", a)), ZERO)
            if back > 0:
                flow[(a, b)] = back
    return value, flow


def shift_reachable(rel: BaseRelation, f: Lottery, g: Lottery):
    """Transport plan witnessing f < g via strictly improving shifts, or None.

    Feasible iff the excess mass of f over g can be routed entirely along
    strict pairs onto g's excess; strict transitivity lets multi-step
    shift chains collapse to direct moves.
    """
    for a in f.support() | g.support():
        rel._require(a)
    if f == g:
        return None
    excess = {}
    deficit = {}
    for a in f.support() | g.support():
        d = f.weight(a) - g.weight(a)
        if d > 0:
            excess[a] = d
        elif d < 0:
            deficit[a] = -d
    edges = [
        (a, b)
        for a in excess
        for b in deficit
        if rel.classify(a, b) is RelKind.LESS
    ]
    total = sum(excess.values(), ZERO)
    value, flow = _max_flow(excess, deficit, edges)
    if value != total:
        return None
    moves = dict(flow)
    for a in f.support() & g.support():
        stay = min(f.weight(a), g.weight(a))
        if stay > 0:
            moves[(a, a)] = stay
    return TransportPlan(moves=tuple(sorted(moves.items())))


def compare(rel: BaseRelation, f: Lottery, g: Lottery) -> AdmissibleSet:
    """Judgments between f and g not refuted by rules R1-R5."""
    if f == g:
        return AdmissibleSet(frozenset({RelKind.EQUIV}), ("identity: f = g",))
    profile = cross_profile(rel, f, g)
    members = set(RelKind)
    provenance = []

    kinds = set(profile.values())
    dom_fg = kinds <= {RelKind.LESS, RelKind.EQUIV}
    dom_gf = kinds <= {RelKind.GREATER, RelKind.EQUIV}
    if dom_fg:
        members -= {RelKind.GREATER, RelKind.INCOMP}
        provenance.append("R1 dominance f <= g: every support pair is < or ~")
    if dom_gf:
        members -= {RelKind.LESS, RelKind.INCOMP}
        provenance.append("R2 dominance g <= f: every support pair is > or ~")
    plan_fg = shift_reachable(rel, f, g)
    if plan_fg is not None:
        members -= {RelKind.EQUIV, RelKind.GREATER, RelKind.INCOMP}
        provenance.append(f"R3 shift f => g with plan {plan_fg.move_dict()}")
    plan_gf = shift_reachable(rel, g, f)
    if plan_gf is not None:
        members -= {RelKind.EQUIV, RelKind.LESS, RelKind.INCOMP}
        provenance.append(f"R3' shift g => f with plan {plan_gf.move_dict()}")
    if RelKind.LESS not in kinds:
        members -= {RelKind.LESS}
        provenance.append("R4 no support pair is <, so f < g is impossible")
    if RelKind.GREATER not in kinds:
        members -= {RelKind.GREATER}
        provenance.append("R5 no support pair is >, so f > g is impossible")

    if not members:  # pragma: no cover - rules are mutually consistent
        raise AssertionError("elimination rules refuted every judgment")
    return AdmissibleSet(frozenset(members), tuple(provenance))


@dataclass(frozen=True)
class Derivation:
    """How a saturated fact was obtained: rule id plus its witnesses."""

    rule: str
    premises: tuple
    alpha: Fraction | None = None


@dataclass(frozen=True)
class DerivedFacts:
    """Weak/strict lottery pairs derivable within a family.

    ``provenance`` covers every derived fact over the internal pool
    (family plus degenerate lotteries of the mentioned alternatives) and
    allows each derivation step to be replayed.
    """

    weak: frozenset[tuple[Lottery, Lottery]]
    strict: frozenset[tuple[Lottery, Lottery]]
    provenance: dict = field(default_factory=dict, compare=False)


def _coefficient(h: Lottery, x: Lottery, y: Lottery):
    """Alpha in [0, 1] with h = alpha*x + (1-alpha)*y, or None; x != y."""
    if h == x:
        return Fraction(1)
    if h == y:
        return Fraction(0)
    return decompose(h, x, y)


def saturate(rel: BaseRelation, family) -> DerivedFacts:
    """Least fixpoint of the mixture derivation rules over ``family``.

    Seeds weak facts with dominance and strict facts with shift witnesses
    over the pool (family members plus degenerate lotteries on their
    supports), then closes under transitivity and the three mixing rules,
    restricted to mixtures that are themselves pool members.  The result
    is restricted to pairs of family members.
    """
    family = list(dict.fromkeys(family))
    pool = list(family)
    for lot in family:
        for a in sorted(lot.support()):
            deg = Lottery.degenerate(a)
            if deg not in pool:
                pool.append(deg)
    for lot in pool:
        for a in lot.support():
            rel._require(a)

    weak: set[tuple[Lottery, Lottery]] = set()
    strict: set[tuple[Lottery, Lottery]] = set()
    prov: dict = {}

    def add_weak(pair, derivation):
        if pair not in weak:
            weak.add(pair)
            prov.setdefault(pair, derivation)
            return True
        return False

    def add_strict(pair, derivation):
        changed = False
        if pair not in strict:
            strict.add(pair)
            prov[pair] = derivation
            changed = True
        if pair not in weak:
            weak.add(pair)
            changed = True
        return changed

    for x in pool:
        add_weak((x, x), Derivation("reflexive", (x,)))
    for x in pool:
        for y in pool:
            if x == y:
                continue
            if dominates(rel, x, y):
                add_weak((x, y), Derivation("seed-dominance", (x, y)))
            plan = shift_reachable(rel, x, y)
            if plan is not None:
                add_strict((x, y), Derivation("seed-shift", (x, y, plan)))

    # coefficient of every pool member against every ordered pool pair
    coeffs: dict[tuple[Lottery, Lottery], list[tuple[Lottery, Fraction]]] = {}
    for x in pool:
        for y in pool:
            if x == y:
                continue
            entries = []
            for h in pool:
                c = _coefficient(h, x, y)
                if c is not None:
                    entries.append((h, c))
            coeffs[(x, y)] = entries

    def mix_targets(x1, x2, strict_alpha_positive):
        """(h, alpha) pairs with h = alpha*x1 + (1-alpha)*x2 in the pool.

        For x1 == x2 the mixture is x1 for every alpha; alpha is reported
        as None (matches anything).
        """
        if x1 == x2:
            return [(x1, None)]
        out = coeffs[(x1, x2)]
        if strict_alpha_positive:
            out = [(h, c) for h, c in out if c > 0]
        return out

    changed = True
    while changed:
        changed = False
        # transitivity (weak composed with weak; strict absorbs weak)
        for (x, y1) in list(weak):
            for (y2, z) in list(weak):
                if y1 != y2 or x == z:
                    continue
                s = (x, y1) in strict or (y2, z) in strict
                d = Derivation("A2", ((x, y1), (y2, z)))
                if s:
                    changed |= add_strict((x, z), d)
                else:
                    changed |= add_weak((x, z), d)
        # mixing a strict pair with itself at two coefficients
        for (f, g) in list(strict):
            if f == g:
                continue
            cs = coeffs[(f, g)]
            for h1, c1 in cs:
                for h2, c2 in cs:
                    if c1 > c2:
                        # h1 weights the worse component more heavily
                        changed |= add_strict(
                            (h1, h2), Derivation("A3", ((f, g), h1, c1, h2, c2))
                        )
        # mixing two weak facts / a strict with a weak at a shared alpha
        weak_facts = list(weak)
        strict_facts = list(strict)
        for first_strict, first_list in ((False, weak_facts), (True, strict_facts)):
            for (f1, g1) in first_list:
                for (f2, g2) in weak_facts:
                    for hf, af in mix_targets(f1, f2, first_strict):
                        for hg, ag in mix_targets(g1, g2, first_strict):
                            if af is not None and ag is not None and af != ag:
                                continue
                            alpha = af if af is not None else ag
                            d = Derivation(
                                "A5" if first_strict else "A4",
                                ((f1, g1), (f2, g2), hf, hg),
                                alpha=alpha,
                            )
                            if first_strict:
                                changed |= add_strict((hf, hg), d)
                            else:
                                changed |= add_weak((hf, hg), d)

    fam = set(family)
    return DerivedFacts(
        weak=frozenset(p for p in weak if p[0] in fam and p[1] in fam),
        strict=frozenset(p for p in strict if p[0] in fam and p[1] in fam),
        provenance=prov,
    )


def maximal_filter(rel: BaseRelation, offers) -> list[tuple[str, Lottery]]:
    """Drop offers certainly strictly dominated by another offer.

    ``offers`` is a sequence of (name, lottery) pairs; an offer is dropped
    only when compare against some other offer is the singleton {Less}.
    Output preserves input order.
    """
    named = list(offers)
    seen = set()
    for name, _ in named:
        if name in seen:
            raise DuplicateOfferName(name)
        seen.add(name)
    kept = []
    for name, lot in named:
        dominated = any(
            other != lot
            and compare(rel, lot, other).members == {RelKind.LESS}
            for _, other in named
        )
        if not dominated:
            kept.append((name, lot))
    return kept
