"""Formulas of L1: epsilon atoms, disjunction and negation.

The core tree only has three constructors (:class:`Eps`, :class:`Or`,
:class:`Not`).  Conjunction, implication and equivalence exist only at the
parser level (:class:`And`, :class:`Implies`, :class:`Iff`) and are removed
by :func:`desugar`.

Concrete syntax (ASCII)::

    eps(a,b)        atom
    ~A              negation
    A | B, A \\/ B   disjunction   (right-associated)
    A & B, A /\\ B   conjunction
    A -> B          implication   (right-associated)
    A <-> B         equivalence

Precedence, tightest first: ``~``, ``&``, ``|``, ``->``, ``<->``.
The symbols ``ε ∼ ¬ ∨ ∧ ⊃ → ≡ ↔`` are accepted as aliases; ``εab`` is read
as ``eps(a,b)`` when both names are single letters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

__all__ = [
    "RESERVED_VAR",
    "Eps",
    "Or",
    "Not",
    "And",
    "Implies",
    "Iff",
    "Formula",
    "SurfaceFormula",
    "ParseError",
    "parse",
    "parse_formula",
    "desugar",
    "render",
    "substitute",
    "variables",
    "subformulas",
    "size",
    "disj",
    "conj",
    "implies",
    "iff",
    "disjuncts",
    "is_literal",
    "is_atomic",
]

#: Designated name variable of the rejection axioms.  Never accepted from
#: user input, so substitutions onto it cannot capture a user variable.
RESERVED_VAR = "a0"


def _cached_hash(obj, parts) -> None:
    object.__setattr__(obj, "_hash", hash(parts))


@dataclass(frozen=True, eq=True)
class Eps:
    left: str
    right: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _cached_hash(self, ("eps", self.left, self.right))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render(self, unicode=True)


@dataclass(frozen=True, eq=True)
class Or:
    lhs: "AnyFormula"
    rhs: "AnyFormula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _cached_hash(self, ("or", self.lhs, self.rhs))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render(self, unicode=True)


@dataclass(frozen=True, eq=True)
class Not:
    arg: "AnyFormula"
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _cached_hash(self, ("not", self.arg))

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render(self, unicode=True)


@dataclass(frozen=True)
class And:
    lhs: "AnyFormula"
    rhs: "AnyFormula"


@dataclass(frozen=True)
class Implies:
    lhs: "AnyFormula"
    rhs: "AnyFormula"


@dataclass(frozen=True)
class Iff:
    lhs: "AnyFormula"
    rhs: "AnyFormula"


Formula = Union[Eps, Or, Not]
SurfaceFormula = Union[Eps, Or, Not, And, Implies, Iff]
AnyFormula = SurfaceFormula


# ---------------------------------------------------------------------------
# Convenience constructors


def disj(*items: Formula) -> Formula:
    """Right-associated disjunction of one or more formulas."""
    if not items:
        raise ValueError("empty disjunction")
    out = items[-1]
    for item in reversed(items[:-1]):
        out = Or(item, out)
    return out


def conj(a: Formula, b: Formula) -> Formula:
    return Not(Or(Not(a), Not(b)))


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Not(a), b)


def iff(a: Formula, b: Formula) -> Formula:
    return conj(implies(a, b), implies(b, a))


def disjuncts(f: Formula) -> list[Formula]:
    """Leaves of the top-level ``Or`` tree, left to right."""
    out: list[Formula] = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Or):
            stack.append(g.rhs)
            stack.append(g.lhs)
        else:
            out.append(g)
    return out


def is_atomic(f: Formula) -> bool:
    return isinstance(f, Eps)


def is_literal(f: Formula) -> bool:
    return isinstance(f, Eps) or (isinstance(f, Not) and isinstance(f.arg, Eps))


# ---------------------------------------------------------------------------
# Parsing


class ParseError(ValueError):
    """Malformed input.  ``offset`` is a byte offset into the UTF-8 text."""

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


_IDENT = re.compile(r"[a-z][a-z0-9_]*")

# longest match first
_SYMBOLS = [
    ("<->", "IFF"),
    ("->", "IMP"),
    ("\\/", "OR"),
    ("/\\", "AND"),
    ("|", "OR"),
    ("&", "AND"),
    ("~", "NOT"),
    ("(", "LP"),
    (")", "RP"),
    (",", "COMMA"),
    ("∼", "NOT"),
    ("¬", "NOT"),
    ("∨", "OR"),
    ("∧", "AND"),
    ("⊃", "IMP"),
    ("→", "IMP"),
    ("≡", "IFF"),
    ("↔", "IFF"),
]

_TOKEN_TEXT = {
    "IFF": "<->",
    "IMP": "->",
    "OR": "|",
    "AND": "&",
    "NOT": "~",
    "LP": "(",
    "RP": ")",
    "COMMA": ",",
    "EPS": "eps",
    "IDENT": "identifier",
    "EOF": "end of input",
}


class _Parser:
    def __init__(self, text: str, allow_reserved: bool):
        self.text = text
        self.pos = 0
        self.allow_reserved = allow_reserved

    # -- lexical helpers -------------------------------------------------
    def _offset(self, pos: int | None = None) -> int:
        pos = self.pos if pos is None else pos
        return len(self.text[:pos].encode("utf-8"))

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> tuple[str, str, int]:
        """Return (kind, text, start) of the next token without consuming it."""
        self._skip_ws()
        start = self.pos
        if start >= len(self.text):
            return "EOF", "", start
        for sym, kind in _SYMBOLS:
            if self.text.startswith(sym, start):
                return kind, sym, start
        if self.text[start] == "ε":
            return "EPS", "ε", start
        m = _IDENT.match(self.text, start)
        if m:
            word = m.group(0)
            if word == "eps":
                return "EPS", word, start
            return "IDENT", word, start
        return "BAD", self.text[start], start

    def _advance(self, tok: tuple[str, str, int]) -> None:
        self.pos = tok[2] + len(tok[1])

    def _error(self, message: str, expected: set[str], pos: int | None = None) -> ParseError:
        return ParseError(message, self._offset(pos), frozenset(_TOKEN_TEXT.get(e, e) for e in expected))

    def _expect(self, kind: str) -> tuple[str, str, int]:
        tok = self._peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise self._error(f"unexpected {found}", {kind}, tok[2])
        self._advance(tok)
        return tok

    def _ident(self) -> str:
        tok = self._expect("IDENT")
        if tok[1] == RESERVED_VAR and not self.allow_reserved:
            raise ParseError(f"name {RESERVED_VAR!r} is reserved", self._offset(tok[2]))
        return tok[1]

    # -- grammar -----------------------------------------------------------
    def parse(self) -> SurfaceFormula:
        f = self.iff()
        tok = self._peek()
        if tok[0] != "EOF":
            raise self._error(f"unexpected {tok[1]!r}", {"EOF", "OR", "AND", "IMP", "IFF"}, tok[2])
        return f

    def iff(self):
        f = self.imp()
        while self._peek()[0] == "IFF":
            self._advance(self._peek())
            f = Iff(f, self.imp())
        return f

    def imp(self):
        f = self.disj()
        if self._peek()[0] == "IMP":
            self._advance(self._peek())
            return Implies(f, self.imp())
        return f

    def disj(self):
        f = self.conj()
        if self._peek()[0] == "OR":
            self._advance(self._peek())
            return Or(f, self.disj())
        return f

    def conj(self):
        f = self.unary()
        if self._peek()[0] == "AND":
            self._advance(self._peek())
            return And(f, self.conj())
        return f

    def unary(self):
        tok = self._peek()
        kind = tok[0]
        if kind == "NOT":
            self._advance(tok)
            return Not(self.unary())
        if kind == "LP":
            self._advance(tok)
            f = self.iff()
            self._expect("RP")
            return f
        if kind == "EPS":
            return self.atom(tok)
        found = "end of input" if kind == "EOF" else repr(tok[1])
        raise self._error(f"unexpected {found}", {"NOT", "LP", "EPS"}, tok[2])

    def atom(self, tok):
        self._advance(tok)
        if tok[1] == "ε" and self.pos < len(self.text) and self.text[self.pos] != "(":
            # compact form: two single-letter names, e.g. εab
            pair = self.text[self.pos:self.pos + 2]
            if len(pair) == 2 and all("a" <= ch <= "z" for ch in pair):
                follow = self.text[self.pos + 2:self.pos + 3]
                if not (follow.isalnum() or follow == "_"):
                    self.pos += 2
                    return Eps(pair[0], pair[1])
            raise self._error("malformed compact atom", {"LP"})
        self._expect("LP")
        left = self._ident()
        self._expect("COMMA")
        right = self._ident()
        self._expect("RP")
        return Eps(left, right)


def parse(text: str, *, allow_reserved: bool = False) -> SurfaceFormula:
    """Parse ``text`` into a surface formula (may contain ``&``, ``->``, ``<->``)."""
    return _Parser(text, allow_reserved).parse()


def parse_formula(text: str, *, allow_reserved: bool = False) -> Formula:
    """Parse and desugar in one go."""
    return desugar(parse(text, allow_reserved=allow_reserved))


def desugar(s: SurfaceFormula) -> Formula:
    """Eliminate ``And``/``Implies``/``Iff`` in favour of ``Or`` and ``Not``."""
    if isinstance(s, Eps):
        return s
    if isinstance(s, Not):
        arg = desugar(s.arg)
        return s if arg is s.arg else Not(arg)
    if isinstance(s, Or):
        lhs, rhs = desugar(s.lhs), desugar(s.rhs)
        return s if (lhs is s.lhs and rhs is s.rhs) else Or(lhs, rhs)
    if isinstance(s, And):
        return conj(desugar(s.lhs), desugar(s.rhs))
    if isinstance(s, Implies):
        return implies(desugar(s.lhs), desugar(s.rhs))
    if isinstance(s, Iff):
        return iff(desugar(s.lhs), desugar(s.rhs))
    raise TypeError(f"not a formula: {s!r}")


# ---------------------------------------------------------------------------
# Printing

_ASCII = {"not": "~", "or": " | ", "and": " & ", "imp": " -> ", "iff": " <-> "}
_UNICODE = {"not": "∼", "or": " ∨ ", "and": " ∧ ", "imp": " ⊃ ", "iff": " ≡ "}
_PREC = {Iff: 0, Implies: 1, Or: 2, And: 3, Not: 4, Eps: 5}


def _render_atom(f: Eps, unicode: bool) -> str:
    if unicode:
        if len(f.left) == 1 and len(f.right) == 1:
            return f"ε{f.left}{f.right}"
        return f"ε({f.left},{f.right})"
    return f"eps({f.left},{f.right})"


def render(f: SurfaceFormula, unicode: bool = False) -> str:
    """Print with minimal parentheses; ``parse(render(f)) == f``."""
    sym = _UNICODE if unicode else _ASCII

    def go(g) -> str:
        if isinstance(g, Eps):
            return _render_atom(g, unicode)
        if isinstance(g, Not):
            inner = go(g.arg)
            if _PREC[type(g.arg)] < _PREC[Not]:
                inner = f"({inner})"
            return sym["not"] + inner
        op = {Or: "or", And: "and", Implies: "imp", Iff: "iff"}[type(g)]
        p = _PREC[type(g)]
        lhs, rhs = go(g.lhs), go(g.rhs)
        # Or/And/Implies associate to the right, Iff to the left
        left_assoc = isinstance(g, Iff)
        lp = _PREC[type(g.lhs)]
        rp = _PREC[type(g.rhs)]
        if lp < p or (lp == p and not left_assoc):
            lhs = f"({lhs})"
        if rp < p or (rp == p and left_assoc):
            rhs = f"({rhs})"
        return lhs + sym[op] + rhs

    return go(f)


# ---------------------------------------------------------------------------
# Structural operations


def substitute(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Simultaneous uniform substitution of name variables."""
    if not mapping:
        return f
    if isinstance(f, Eps):
        left = mapping.get(f.left, f.left)
        right = mapping.get(f.right, f.right)
        return f if (left == f.left and right == f.right) else Eps(left, right)
    if isinstance(f, Not):
        return Not(substitute(f.arg, mapping))
    if isinstance(f, Or):
        return Or(substitute(f.lhs, mapping), substitute(f.rhs, mapping))
    raise TypeError(f"not a core formula: {f!r}")


def variables(f: Formula) -> list[str]:
    """Name variables in first-occurrence order (left to right, depth first)."""
    seen: dict[str, None] = {}
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Eps):
            seen.setdefault(g.left)
            seen.setdefault(g.right)
        elif isinstance(g, Not):
            stack.append(g.arg)
        else:
            stack.append(g.rhs)
            stack.append(g.lhs)
    return list(seen)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Every subformula occurrence, preorder."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, Or):
            stack.append(g.rhs)
            stack.append(g.lhs)


def size(f: Formula) -> int:
    """Number of nodes."""
    return sum(1 for _ in subformulas(f))
