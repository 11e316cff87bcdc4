"""Translation of L1 into first-order logic with equality, and a validity oracle.

``εab`` becomes the Russellian description "the F_a is F_b", expanded to::

    ∃x(F_a x ∧ F_b x) ∧ ∀x∀y(F_a x ∧ F_a y ⊃ x = y)

Disjunction and negation are translated homomorphically.

The oracle decides validity by brute force over subset assignments: with
``v`` name variables, every assignment of subsets of ``{1, ..., 2v}`` is
checked.  Atom truth depends on an assignment only up to permutations of the
universe, so assignments are enumerated as multisets of element "signatures"
(the set of variables an element belongs to); this visits every assignment's
isomorphism class exactly once.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from . import model as _model
from .syntax import Eps, Formula, Not, Or, variables

__all__ = [
    "Pred",
    "Equals",
    "FOr",
    "FAnd",
    "FNot",
    "FImplies",
    "Exists",
    "Forall",
    "FolFormula",
    "FolStructure",
    "UnboundVariable",
    "ResourceLimit",
    "t_transform",
    "eval_fol",
    "render_fol",
    "render_tptp",
    "oracle_valid",
    "oracle_countermodel",
    "atom_semantics_equivalence",
    "achievable_valuations",
    "DEFAULT_VAR_CAP",
]

DEFAULT_VAR_CAP = 4


@dataclass(frozen=True)
class Pred:
    symbol: str
    var: str


@dataclass(frozen=True)
class Equals:
    left: str
    right: str


@dataclass(frozen=True)
class FOr:
    lhs: "FolFormula"
    rhs: "FolFormula"


@dataclass(frozen=True)
class FAnd:
    lhs: "FolFormula"
    rhs: "FolFormula"


@dataclass(frozen=True)
class FNot:
    arg: "FolFormula"


@dataclass(frozen=True)
class FImplies:
    lhs: "FolFormula"
    rhs: "FolFormula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "FolFormula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "FolFormula"


FolFormula = Union[Pred, Equals, FOr, FAnd, FNot, FImplies, Exists, Forall]


def predicate_symbol(name: str) -> str:
    return f"F_{name}"


def description(a: str, b: str, k: int) -> FolFormula:
    """``F_b ιx F_a x`` with bound variables ``x<k>``, ``y<k>``."""
    x, y = f"x{k}", f"y{k}"
    fa, fb = predicate_symbol(a), predicate_symbol(b)
    exists = Exists(x, FAnd(Pred(fa, x), Pred(fb, x)))
    unique = Forall(x, Forall(y, FImplies(FAnd(Pred(fa, x), Pred(fa, y)), Equals(x, y))))
    return FAnd(exists, unique)


def t_transform(f: Formula) -> FolFormula:
    counter = itertools.count(1)

    def go(g: Formula) -> FolFormula:
        if isinstance(g, Eps):
            return description(g.left, g.right, next(counter))
        if isinstance(g, Not):
            return FNot(go(g.arg))
        if isinstance(g, Or):
            lhs = go(g.lhs)
            return FOr(lhs, go(g.rhs))
        raise TypeError(f"not a core formula: {g!r}")

    return go(f)


# ---------------------------------------------------------------------------
# Finite structures


@dataclass(frozen=True)
class FolStructure:
    domain: frozenset
    interpretation: Mapping[str, frozenset]

    def __post_init__(self):
        object.__setattr__(self, "domain", frozenset(self.domain))
        interp = {k: frozenset(v) for k, v in self.interpretation.items()}
        object.__setattr__(self, "interpretation", interp)
        if not self.domain:
            raise ValueError("domain must be nonempty")
        for k, v in interp.items():
            if not v <= self.domain:
                raise ValueError(f"interpretation of {k} leaves the domain")

    def extension(self, symbol: str) -> frozenset:
        return self.interpretation.get(symbol, frozenset())


class UnboundVariable(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


def eval_fol(s: FolStructure, phi: FolFormula, env: Optional[dict] = None) -> bool:
    env = {} if env is None else env

    def lookup(var: str):
        try:
            return env[var]
        except KeyError:
            raise UnboundVariable(var) from None

    if isinstance(phi, Pred):
        return lookup(phi.var) in s.extension(phi.symbol)
    if isinstance(phi, Equals):
        return lookup(phi.left) == lookup(phi.right)
    if isinstance(phi, FNot):
        return not eval_fol(s, phi.arg, env)
    if isinstance(phi, FOr):
        return eval_fol(s, phi.lhs, env) or eval_fol(s, phi.rhs, env)
    if isinstance(phi, FAnd):
        return eval_fol(s, phi.lhs, env) and eval_fol(s, phi.rhs, env)
    if isinstance(phi, FImplies):
        return (not eval_fol(s, phi.lhs, env)) or eval_fol(s, phi.rhs, env)
    if isinstance(phi, (Exists, Forall)):
        test = any if isinstance(phi, Exists) else all
        return test(eval_fol(s, phi.body, {**env, phi.var: d}) for d in sorted(s.domain))
    raise TypeError(f"not a FOL formula: {phi!r}")


def atom_semantics_equivalence(a_val, b_val, universe) -> bool:
    """Truth of the expanded description for ``εab`` with F_a, F_b given."""
    s = FolStructure(frozenset(universe), {"F_a": frozenset(a_val), "F_b": frozenset(b_val)})
    return eval_fol(s, t_transform(Eps("a", "b")))


# ---------------------------------------------------------------------------
# Printing

_ASCII_OPS = {FOr: "|", FAnd: "&", FImplies: "->"}


def render_fol(phi: FolFormula) -> str:
    """Fully parenthesised ASCII rendering."""
    if isinstance(phi, Pred):
        return f"{phi.symbol}({phi.var})"
    if isinstance(phi, Equals):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, FNot):
        return f"~{_wrap(phi.arg, render_fol)}"
    if isinstance(phi, (FOr, FAnd, FImplies)):
        op = _ASCII_OPS[type(phi)]
        return f"{_wrap(phi.lhs, render_fol)} {op} {_wrap(phi.rhs, render_fol)}"
    if isinstance(phi, Exists):
        return f"exists {phi.var}. {_wrap(phi.body, render_fol)}"
    if isinstance(phi, Forall):
        return f"forall {phi.var}. {_wrap(phi.body, render_fol)}"
    raise TypeError(phi)


def _wrap(phi, fn) -> str:
    text = fn(phi)
    if isinstance(phi, (Pred, FNot)):
        return text
    return f"({text})"


def _tptp(phi: FolFormula) -> str:
    if isinstance(phi, Pred):
        return f"{phi.symbol.lower()}({phi.var.upper()})"
    if isinstance(phi, Equals):
        return f"{phi.left.upper()} = {phi.right.upper()}"
    if isinstance(phi, FNot):
        return f"~ {_wrap(phi.arg, _tptp)}"
    if isinstance(phi, (FOr, FAnd, FImplies)):
        op = {FOr: "|", FAnd: "&", FImplies: "=>"}[type(phi)]
        return f"{_wrap(phi.lhs, _tptp)} {op} {_wrap(phi.rhs, _tptp)}"
    if isinstance(phi, (Exists, Forall)):
        q = "?" if isinstance(phi, Exists) else "!"
        return f"{q} [{phi.var.upper()}] : {_wrap(phi.body, _tptp)}"
    raise TypeError(phi)


def render_tptp(phi: FolFormula, name: str = "goal", role: str = "conjecture") -> str:
    return f"fof({name}, {role}, {_tptp(phi)})."


# ---------------------------------------------------------------------------
# Bounded oracle


@functools.lru_cache(maxsize=None)
def achievable_valuations(nvars: int, universe_size: int) -> dict:
    """Distinct truth tables of the ``nvars**2`` atoms over all assignments.

    Keys are bitmasks (bit ``i*nvars + j`` is the truth of ``ε v_i v_j``);
    each maps to one representative assignment (tuple of frozensets).
    """
    signatures = range(1 << nvars)
    out: dict[int, tuple] = {}
    for multiset in itertools.combinations_with_replacement(signatures, universe_size):
        values = [set() for _ in range(nvars)]
        for element, sig in enumerate(multiset, start=1):
            for i in range(nvars):
                if sig >> i & 1:
                    values[i].add(element)
        frozen = tuple(frozenset(v) for v in values)
        mask = 0
        for i, a in enumerate(frozen):
            if len(a) != 1:
                continue
            for j, b in enumerate(frozen):
                if _model.value_holds(a, b):
                    mask |= 1 << (i * nvars + j)
        out.setdefault(mask, frozen)
    return out


def _check_cap(nvars: int, cap: int) -> None:
    if nvars > cap:
        raise ResourceLimit(f"{nvars} name variables exceed the oracle cap of {cap}")


def oracle_countermodel(f: Formula, cap: int = DEFAULT_VAR_CAP, universe_size: Optional[int] = None):
    """A falsifying :class:`~l1onto.model.L1Model`, or ``None`` if ``f`` is valid."""
    names = variables(f)
    _check_cap(len(names), cap)
    n = len(names)
    size = 2 * n if universe_size is None else universe_size
    size = max(size, 1)
    for values in achievable_valuations(n, size).values():
        m = _model.L1Model(dict(zip(names, values)), frozenset(range(1, size + 1)))
        if not _model.evaluate(m, f):
            return m
    return None


def oracle_valid(f: Formula, cap: int = DEFAULT_VAR_CAP, universe_size: Optional[int] = None) -> bool:
    """True iff ``f`` holds under every subset assignment over ``{1..2v}``."""
    return oracle_countermodel(f, cap, universe_size) is None
