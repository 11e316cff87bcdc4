"""Positive and negative parts of a formula (Schütte's polarity calculus).

A part occurrence is addressed by a path from the root.  Starting at the root
with positive polarity, a path may step into either disjunct of an ``Or`` only
while the polarity is positive, and into the argument of a ``Not`` at any
polarity, which flips it.  A negative disjunction is therefore a leaf of the
part structure: its disjuncts are not parts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional

from .syntax import Eps, Formula, Not, Or, render, size

__all__ = [
    "Polarity",
    "Step",
    "Occurrence",
    "InvalidOccurrence",
    "enumerate_parts",
    "iter_parts",
    "negative_parts",
    "positive_parts",
    "part_at",
    "remove",
    "replace",
    "minimal_parts",
    "flatten",
    "find_closure",
    "is_closed",
    "Closure",
]


class Polarity(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    def flip(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE


POS = Polarity.POSITIVE
NEG = Polarity.NEGATIVE


class Step(str, enum.Enum):
    LEFT = "L"
    RIGHT = "R"
    NOT = "N"


Path = tuple  # tuple[Step, ...]


@dataclass(frozen=True)
class Occurrence:
    """A part occurrence: where it is, what it is, and its polarity."""

    path: tuple
    formula: Formula
    polarity: Polarity

    @property
    def positive(self) -> bool:
        return self.polarity is POS


class InvalidOccurrence(ValueError):
    pass


def iter_parts(f: Formula) -> Iterator[Occurrence]:
    """Depth-first, left-to-right enumeration of all part occurrences."""
    stack: list[tuple[Formula, tuple, Polarity]] = [(f, (), POS)]
    while stack:
        g, path, pol = stack.pop()
        yield Occurrence(path, g, pol)
        if isinstance(g, Not):
            stack.append((g.arg, path + (Step.NOT,), pol.flip()))
        elif isinstance(g, Or) and pol is POS:
            stack.append((g.rhs, path + (Step.RIGHT,), POS))
            stack.append((g.lhs, path + (Step.LEFT,), POS))


def enumerate_parts(f: Formula) -> list[Occurrence]:
    return list(iter_parts(f))


def negative_parts(f: Formula) -> set[Formula]:
    return {o.formula for o in iter_parts(f) if o.polarity is NEG}


def positive_parts(f: Formula) -> set[Formula]:
    return {o.formula for o in iter_parts(f) if o.polarity is POS}


def part_at(f: Formula, path) -> Occurrence:
    """Resolve ``path`` against ``f``; raise if it does not address a part."""
    g, pol = f, POS
    for i, step in enumerate(path):
        step = Step(step)
        if step is Step.NOT:
            if not isinstance(g, Not):
                raise InvalidOccurrence(f"step {i}: N into non-negation")
            g, pol = g.arg, pol.flip()
        else:
            if not isinstance(g, Or):
                raise InvalidOccurrence(f"step {i}: {step.value} into non-disjunction")
            if pol is NEG:
                raise InvalidOccurrence(f"step {i}: disjuncts of a negative disjunction are not parts")
            g = g.lhs if step is Step.LEFT else g.rhs
    return Occurrence(tuple(Step(s) for s in path), g, pol)


def remove(f: Formula, path) -> Optional[Formula]:
    """Remove the part at ``path``; ``None`` stands for the empty expression.

    Removing a disjunct leaves the other disjunct in place of the disjunction;
    removing the argument of a negation removes the negation as well.
    """
    part_at(f, path)
    return _remove(f, tuple(Step(s) for s in path))


def _remove(f: Formula, path: tuple) -> Optional[Formula]:
    if not path:
        return None
    step, rest = path[0], path[1:]
    if step is Step.NOT:
        inner = _remove(f.arg, rest)
        return None if inner is None else Not(inner)
    if step is Step.LEFT:
        inner = _remove(f.lhs, rest)
        return f.rhs if inner is None else Or(inner, f.rhs)
    inner = _remove(f.rhs, rest)
    return f.lhs if inner is None else Or(f.lhs, inner)


def replace(f: Formula, path, g: Formula) -> Formula:
    """Put ``g`` in place of the part at ``path``."""
    part_at(f, path)
    return _replace(f, tuple(Step(s) for s in path), g)


def _replace(f: Formula, path: tuple, g: Formula) -> Formula:
    if not path:
        return g
    step, rest = path[0], path[1:]
    if step is Step.NOT:
        return Not(_replace(f.arg, rest, g))
    if step is Step.LEFT:
        return Or(_replace(f.lhs, rest, g), f.rhs)
    return Or(f.lhs, _replace(f.rhs, rest, g))


def minimal_parts(f: Formula) -> list[Occurrence]:
    """Parts with no proper parts of their own: atoms and negative disjunctions."""
    return [
        o for o in iter_parts(f)
        if isinstance(o.formula, Eps) or (isinstance(o.formula, Or) and o.polarity is NEG)
    ]


def flatten(f: Formula) -> list[Formula]:
    """Minimal positive parts, and negations of minimal negative parts, in order.

    Their disjunction is classically equivalent to ``f``.
    """
    return [o.formula if o.polarity is POS else Not(o.formula) for o in minimal_parts(f)]


@dataclass(frozen=True)
class Closure:
    formula: Formula
    positive: tuple
    negative: tuple


def find_closure(f: Formula) -> Optional[Closure]:
    """A subformula occurring both as a positive and as a negative part.

    Picks the smallest such formula (by size, then rendered text) and the
    leftmost occurrence of each polarity.
    """
    first_pos: dict[Formula, tuple] = {}
    first_neg: dict[Formula, tuple] = {}
    for o in iter_parts(f):
        table = first_pos if o.polarity is POS else first_neg
        table.setdefault(o.formula, o.path)
    shared = [g for g in first_pos if g in first_neg]
    if not shared:
        return None
    best = min(shared, key=lambda g: (size(g), render(g)))
    return Closure(best, first_pos[best], first_neg[best])


def is_closed(f: Formula) -> bool:
    pos: set[Formula] = set()
    neg: set[Formula] = set()
    for o in iter_parts(f):
        (pos if o.polarity is POS else neg).add(o.formula)
    return not pos.isdisjoint(neg)
