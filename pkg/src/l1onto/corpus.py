"""Formula generators for exhaustive and randomized testing.

The exhaustive generator enumerates formulas up to associativity,
commutativity and idempotence of disjunction: a disjunction is a set of at
least two non-disjunction items, printed right-nested in a fixed order.
Provability is invariant under those three laws, so nothing is lost, and the
count stays in the tens of thousands rather than the tens of millions.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Optional, Sequence

from .parts import NEG, POS, iter_parts, replace
from .syntax import Eps, Formula, Not, Or, disj, render

__all__ = [
    "connectives",
    "atoms_over",
    "canonical_formulas",
    "random_formula",
    "random_context",
    "literal_disjunctions",
]


def connectives(f: Formula) -> int:
    if isinstance(f, Eps):
        return 0
    if isinstance(f, Not):
        return 1 + connectives(f.arg)
    return 1 + connectives(f.lhs) + connectives(f.rhs)


def atoms_over(names: Sequence[str]) -> list[Eps]:
    return [Eps(a, b) for a in names for b in names]


def _key(f: Formula) -> tuple:
    return (connectives(f), render(f))


def canonical_formulas(names: Sequence[str] = ("a", "b"), max_connectives: int = 7) -> list[Formula]:
    """All formulas over ``names`` with at most ``max_connectives`` connectives,
    one per class modulo associativity, commutativity and idempotence of ``∨``.
    """
    # by_level[n]: formulas with exactly n connectives; items[n]: non-disjunctions
    by_level: list[list[Formula]] = []
    items: list[list[Formula]] = []
    for n in range(max_connectives + 1):
        level_items = list(atoms_over(names)) if n == 0 else [Not(g) for g in by_level[n - 1]]
        level_items.sort(key=render)
        items.append(level_items)
        # a disjunction of k items of weights w_i = connectives + 1 has sum(w_i) - 1 connectives
        pool = [(w + 1, g) for w in range(n) for g in items[w]]
        ors = [disj(*combo) for combo in _weighted_sets(pool, n + 1) if len(combo) >= 2]
        by_level.append(level_items + ors)
    return [f for level in by_level for f in level]


def _weighted_sets(pool: list[tuple[int, Formula]], total: int) -> Iterator[tuple]:
    """Subsets of ``pool`` (kept in pool order) whose weights sum to ``total``."""

    def go(start: int, remaining: int, chosen: list) -> Iterator[tuple]:
        if remaining == 0:
            yield tuple(chosen)
            return
        for i in range(start, len(pool)):
            w, g = pool[i]
            if w > remaining:
                continue
            chosen.append(g)
            yield from go(i + 1, remaining - w, chosen)
            chosen.pop()

    yield from go(0, total, [])


def random_formula(rng: random.Random, names: Sequence[str] = ("a", "b", "c"), depth: int = 5) -> Formula:
    """A random formula of depth at most ``depth``."""
    if depth <= 0 or rng.random() < 0.25:
        return Eps(rng.choice(names), rng.choice(names))
    if rng.random() < 0.4:
        return Not(random_formula(rng, names, depth - 1))
    return Or(random_formula(rng, names, depth - 1), random_formula(rng, names, depth - 1))


def random_context(
    rng: random.Random,
    polarity,
    names: Sequence[str] = ("a", "b", "c"),
    depth: int = 4,
    tries: int = 100,
) -> Optional[tuple[Formula, tuple]]:
    """A formula and a non-root path addressing a part of the given polarity.

    The addressed part is the hole; plug something in with :func:`parts.replace`.
    """
    for _ in range(tries):
        f = random_formula(rng, names, depth)
        spots = [o.path for o in iter_parts(f) if o.polarity is polarity and o.path]
        if spots:
            return f, rng.choice(spots)
    return None


def literal_disjunctions(names: Sequence[str] = ("a", "b", "c")) -> Iterator[Formula]:
    """Every nonempty non-closed disjunction of literals over ``names``.

    Each atom is absent, positive or negated; the disjuncts appear in the
    fixed atom order.
    """
    atoms = atoms_over(names)
    for signs in itertools.product((None, POS, NEG), repeat=len(atoms)):
        lits = [a if s is POS else Not(a) for a, s in zip(atoms, signs) if s is not None]
        if lits:
            yield disj(*lits)


def plug(context: Formula, path: tuple, g: Formula) -> Formula:
    return replace(context, path, g)
