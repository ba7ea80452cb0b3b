"""Line-oriented input grammars and canonical text rendering.

Preference files declare one fact or universe entry per line; lottery
files declare one named distribution per line.  Rationals are exact
(``p/q`` or integers); floats are rejected outright.  ``#`` starts a
comment anywhere in a line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .engine import AdmissibleSet
from .errors import DslSyntaxError, DuplicateName, MalformedId
from .lottery import Lottery, make_lottery
from .relation import BaseRelation, FactKind, PrefFact, build_base_relation, check_id

__all__ = [
    "PrefDocument",
    "LotteryDocument",
    "parse_prefs",
    "parse_lotteries",
    "render_prefs",
    "render_lotteries",
    "render_verdict",
    "relation_from_document",
    "lotteries_from_document",
]

_ID_RE = re.compile(r"[\w-]+", re.UNICODE)
_RATIONAL_RE = re.compile(r"-?\d+(?:/\d+)?")

# canonical ASCII operators, with unicode equivalents accepted on input
_OPS = {
    "<": FactKind.STRICT,
    "<=": FactKind.WEAK,
    "~": FactKind.EQUIV,
    "≺": FactKind.STRICT,   # ≺
    "⪯": FactKind.WEAK,     # ⪯
    "∼": FactKind.EQUIV,    # ∼
}


@dataclass(frozen=True)
class PrefDocument:
    facts: tuple[PrefFact, ...]
    universe_decls: tuple[str, ...]
    positions: tuple[int, ...] = field(default=(), compare=False)  # fact line numbers


@dataclass(frozen=True)
class LotteryDocument:
    entries: tuple[tuple[str, tuple[tuple[str, Fraction], ...]], ...]
    positions: tuple[int, ...] = field(default=(), compare=False)


def _strip_comment(line: str) -> str:
    cut = line.find("#")
    return line if cut < 0 else line[:cut]


def _column(line: str, token: str, start: int = 0) -> int:
    idx = line.find(token, start)
    return idx + 1 if idx >= 0 else len(line) + 1


def parse_prefs(text: str) -> PrefDocument:
    """Parse a preference document.

    Statements: ``alt <id>`` (universe declaration), ``a < b`` (strict),
    ``a <= b`` (weak), ``a ~ b`` (equivalence).
    """
    facts: list[PrefFact] = []
    positions: list[int] = []
    universe: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        tokens = line.split()
        if not tokens:
            continue
        if tokens[0] == "alt":
            if len(tokens) != 2:
                raise DslSyntaxError(lineno, _column(line, "alt") + 3, "a single identifier after 'alt'")
            universe.append(check_id(tokens[1]))
            continue
        if len(tokens) != 3:
            raise DslSyntaxError(lineno, 1, "'<id> (<|<=|~) <id>' or 'alt <id>'")
        left, op, right = tokens
        if op not in _OPS:
            col = _column(line, op)
            if op[0] in _OPS and len(op) > 1:
                col += 1  # the first character parses; point at the stray one
            raise DslSyntaxError(lineno, col, "operator <, <= or ~")
        if not _ID_RE.fullmatch(left):
            raise MalformedId(left)
        if not _ID_RE.fullmatch(right):
            raise MalformedId(right)
        facts.append(PrefFact(_OPS[op], left, right))
        positions.append(lineno)
    return PrefDocument(tuple(facts), tuple(universe), tuple(positions))


def _parse_rational(token: str, lineno: int, col: int) -> Fraction:
    if not _RATIONAL_RE.fullmatch(token):
        raise DslSyntaxError(lineno, col, "exact rational p/q or integer (floats are rejected)")
    if "/" in token:
        num, den = token.split("/")
        if int(den) == 0:
            raise DslSyntaxError(lineno, col, "nonzero denominator")
        return Fraction(int(num), int(den))
    return Fraction(int(token))


def parse_lotteries(text: str) -> LotteryDocument:
    """Parse a lottery document: ``<name> : <id>@<rational>(, ...)*`` per line."""
    entries = []
    positions = []
    names = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        head, sep, tail = line.partition(":")
        if not sep:
            raise DslSyntaxError(lineno, len(line) + 1, "':' after the lottery name")
        name = head.strip()
        if not _ID_RE.fullmatch(name):
            raise MalformedId(name)
        if name in names:
            raise DuplicateName(name, lineno)
        names.add(name)
        pairs = []
        for part in tail.split(","):
            item = part.strip()
            if not item:
                raise DslSyntaxError(lineno, _column(line, part) if part else len(line) + 1, "'<id>@<rational>'")
            alt, at, weight = item.partition("@")
            if not at:
                raise DslSyntaxError(lineno, _column(line, item), "'@' between alternative and weight")
            alt = alt.strip()
            weight = weight.strip()
            if not _ID_RE.fullmatch(alt):
                raise MalformedId(alt)
            pairs.append((alt, _parse_rational(weight, lineno, _column(line, weight))))
        entries.append((name, tuple(pairs)))
        positions.append(lineno)
    return LotteryDocument(tuple(entries), tuple(positions))


def render_prefs(doc: PrefDocument) -> str:
    lines = [f"alt {a}" for a in doc.universe_decls]
    lines += [f"{f.left} {f.kind.value} {f.right}" for f in doc.facts]
    return "\n".join(lines) + ("\n" if lines else "")


def render_lotteries(doc: LotteryDocument) -> str:
    lines = [
        name + " : " + ", ".join(f"{a}@{w}" for a, w in pairs)
        for name, pairs in doc.entries
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def render_verdict(verdict: AdmissibleSet, verbose: bool = False) -> str:
    """Canonical-order symbols joined by spaces; provenance indented when verbose."""
    out = " ".join(k.symbol for k in verdict.sorted_members())
    if verbose:
        for note in verdict.provenance:
            out += f"\n  {note}"
    return out


def parse_model(text: str) -> tuple[LotteryDocument, tuple[tuple[str, str], ...]]:
    """Parse an explicit finite model file.

    Lottery lines follow the lottery grammar; relation lines are
    ``<name> <= <name>`` between declared lottery names.
    """
    lottery_lines = []
    weak_pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            lottery_lines.append("")
            continue
        if ":" in line:
            lottery_lines.append(raw)
            continue
        lottery_lines.append("")
        tokens = line.split()
        if len(tokens) != 3 or tokens[1] not in ("<=", "⪯"):
            raise DslSyntaxError(lineno, 1, "'<name> : ...' or '<name> <= <name>'")
        left, _, right = tokens
        if not _ID_RE.fullmatch(left):
            raise MalformedId(left)
        if not _ID_RE.fullmatch(right):
            raise MalformedId(right)
        weak_pairs.append((left, right))
    doc = parse_lotteries("\n".join(lottery_lines))
    return doc, tuple(weak_pairs)


def relation_from_document(doc: PrefDocument) -> BaseRelation:
    return build_base_relation(doc.facts, extra_universe=set(doc.universe_decls))


def lotteries_from_document(doc: LotteryDocument, normalize: bool = False) -> dict[str, Lottery]:
    """Materialize the document into named lotteries, in document order."""
    return {name: make_lottery(pairs, normalize=normalize) for name, pairs in doc.entries}
