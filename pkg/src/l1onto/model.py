"""Finite countermodels for Hintikka formulas.

Names are interpreted as finite sets of positive integers and ``εab`` holds
exactly when the value of ``a`` is a singleton ``{p}`` with ``p`` in the value
of ``b``.  From a Hintikka formula we read off its chains (variables that are
mutually ε-related through negative parts) and their tails, give every chain
its own unit set, every tail the numbers of the chains ending at it plus one
fresh number, and everything else the empty set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .parts import NEG, POS, iter_parts
from .syntax import Eps, Formula, Not, Or, variables
from .tableau import is_hintikka

__all__ = [
    "NotHintikka",
    "L1Model",
    "ChainAnalysis",
    "analyze",
    "build_model",
    "value_holds",
    "eval_atom",
    "evaluate",
    "audit_l1_axioms",
    "singular_names",
    "upgrade_to_L",
    "audit_L_axiom",
    "model_to_json",
    "model_from_json",
]

EMPTY: frozenset = frozenset()


class NotHintikka(ValueError):
    pass


@dataclass(frozen=True)
class L1Model:
    """Assignment of finite sets of naturals to name variables.

    Unlisted variables denote the empty set.  ``anonymous`` holds values that
    belong to the domain without being the value of any variable.
    """

    assignment: Mapping[str, frozenset]
    universe: frozenset
    anonymous: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "assignment", {k: frozenset(v) for k, v in self.assignment.items()})
        object.__setattr__(self, "anonymous", tuple(frozenset(v) for v in self.anonymous))
        object.__setattr__(self, "universe", frozenset(self.universe))
        if not self.universe:
            raise ValueError("universe must be nonempty")
        used = set().union(*self.assignment.values(), *self.anonymous)
        if not used <= self.universe:
            raise ValueError(f"numbers {sorted(used - self.universe)} not in universe")

    def value(self, var: str) -> frozenset:
        return self.assignment.get(var, EMPTY)

    @property
    def domain_values(self) -> list[frozenset]:
        """Distinct values in use, the empty set included, in a fixed order."""
        seen = {EMPTY: None}
        for v in self.assignment.values():
            seen.setdefault(v)
        for v in self.anonymous:
            seen.setdefault(v)
        return sorted(seen, key=lambda s: (len(s), sorted(s)))


def value_holds(a: frozenset, b: frozenset) -> bool:
    """``ε`` between two values: ``a`` is ``{p}`` and ``p`` belongs to ``b``."""
    if len(a) != 1:
        return False
    (p,) = a
    return p in b


def eval_atom(m: L1Model, a: str, b: str) -> bool:
    return value_holds(m.value(a), m.value(b))


def evaluate(m: L1Model, f: Formula) -> bool:
    if isinstance(f, Eps):
        return eval_atom(m, f.left, f.right)
    if isinstance(f, Not):
        return not evaluate(m, f.arg)
    if isinstance(f, Or):
        return evaluate(m, f.lhs) or evaluate(m, f.rhs)
    raise TypeError(f"not a core formula: {f!r}")


# ---------------------------------------------------------------------------
# Chains and tails


@dataclass
class ChainAnalysis:
    chains: list[list[str]]
    tails: dict[str, list[int]]          # tail -> indices into chains, ascending
    others: list[str]

    def chain_of(self, var: str) -> Optional[int]:
        for i, c in enumerate(self.chains):
            if var in c:
                return i
        return None


def _negative_atoms(h: Formula) -> set[Eps]:
    return {o.formula for o in iter_parts(h) if o.polarity is NEG and isinstance(o.formula, Eps)}


def analyze(h: Formula) -> ChainAnalysis:
    if not is_hintikka(h):
        raise NotHintikka("chain analysis needs a Hintikka formula")
    neg = _negative_atoms(h)
    order = variables(h)
    members = [v for v in order if Eps(v, v) in neg]
    chains: list[list[str]] = []
    placed: set[str] = set()
    for v in members:
        if v in placed:
            continue
        chain = [w for w in members if w == v or (Eps(v, w) in neg and Eps(w, v) in neg)]
        placed.update(chain)
        chains.append(chain)
    index = {v: i for i, c in enumerate(chains) for v in c}
    tails: dict[str, set[int]] = {}
    for atom in neg:
        if atom.left in index and atom.right not in index:
            tails.setdefault(atom.right, set()).add(index[atom.left])
    # no tail may sit inside a chain
    assert all(t not in index for t in tails)
    ordered_tails = {t: sorted(tails[t]) for t in order if t in tails}
    others = [v for v in order if v not in index and v not in tails]
    return ChainAnalysis(chains, ordered_tails, others)


def build_model(h: Formula) -> L1Model:
    """The finite countermodel of a Hintikka formula.

    Chains get ``{1}``, ``{2}``, ... in order of first occurrence.  Fresh
    numbers for tails are handed out chain by chain (tails of the first chain
    first), and by first occurrence among tails of the same chain.
    """
    ca = analyze(h)
    assignment: dict[str, frozenset] = {}
    for i, chain in enumerate(ca.chains):
        for v in chain:
            assignment[v] = frozenset({i + 1})
    next_number = len(ca.chains) + 1
    tail_order = sorted(ca.tails, key=lambda t: (ca.tails[t][0], list(ca.tails).index(t)))
    for t in tail_order:
        assignment[t] = frozenset(i + 1 for i in ca.tails[t]) | {next_number}
        next_number += 1
    for v in ca.others:
        assignment[v] = EMPTY
    used = set().union(*assignment.values()) if assignment else set()
    universe = frozenset(used) or frozenset({1})
    return L1Model(assignment, universe)


# ---------------------------------------------------------------------------
# Axiom audits


def audit_l1_axioms(m: L1Model) -> list[str]:
    """Instances of ``εab ⊃ εaa``, transitivity and ``εab ∧ εbb ⊃ εba`` that fail."""
    values = m.domain_values
    bad: list[str] = []
    for a, b in itertools.product(values, repeat=2):
        ab = value_holds(a, b)
        if ab and not value_holds(a, a):
            bad.append(f"εab ⊃ εaa fails for a={sorted(a)}, b={sorted(b)}")
        if ab and value_holds(b, b) and not value_holds(b, a):
            bad.append(f"εab ∧ εbb ⊃ εba fails for a={sorted(a)}, b={sorted(b)}")
        if ab:
            for c in values:
                if value_holds(b, c) and not value_holds(a, c):
                    bad.append(f"εab ∧ εbc ⊃ εac fails for a={sorted(a)}, b={sorted(b)}, c={sorted(c)}")
    return bad


def singular_names(m: L1Model) -> list[frozenset]:
    """Values that are not atoms yet have exactly one value ε-related to them."""
    values = m.domain_values
    out = []
    for v in values:
        if value_holds(v, v):
            continue
        named = [u for u in values if value_holds(u, v)]
        if len(named) == 1:
            out.append(v)
    return out


def upgrade_to_L(m: L1Model) -> L1Model:
    """Adjoin anonymous unit sets until no singular name is left.

    For a singular value the largest element not yet named by a unit set is
    given one.  Variable assignments are untouched, so every formula over the
    model's variables keeps its truth value.
    """
    anonymous = list(m.anonymous)
    current = m
    while True:
        singular = singular_names(current)
        if not singular:
            return current
        present = set(current.domain_values)
        v = singular[0]
        unnamed = [p for p in v if frozenset({p}) not in present]
        # a singular value has at least two elements and only one is named
        q = max(unnamed)
        anonymous.append(frozenset({q}))
        current = L1Model(m.assignment, m.universe, tuple(anonymous))


def audit_L_axiom(m: L1Model) -> list[str]:
    """Failures of ``εab ≡ ∃x(εxa ∧ εxb) ∧ ∀x∀y(εxa ∧ εya ⊃ εxy)`` over the domain."""
    values = m.domain_values
    bad = []
    for a, b in itertools.product(values, repeat=2):
        lhs = value_holds(a, b)
        some = any(value_holds(x, a) and value_holds(x, b) for x in values)
        unique = all(
            value_holds(x, y)
            for x in values if value_holds(x, a)
            for y in values if value_holds(y, a)
        )
        if lhs != (some and unique):
            bad.append(f"description axiom fails for a={sorted(a)}, b={sorted(b)}")
    return bad


# ---------------------------------------------------------------------------
# Serialization


def model_to_json(m: L1Model) -> dict:
    return {
        "assignment": {k: sorted(v) for k, v in m.assignment.items()},
        "anonymous": [sorted(v) for v in m.anonymous],
        "universe": sorted(m.universe),
    }


def model_from_json(data: Mapping) -> L1Model:
    return L1Model(
        {k: frozenset(v) for k, v in data["assignment"].items()},
        frozenset(data["universe"]),
        tuple(frozenset(v) for v in data.get("anonymous", [])),
    )
