"""Tableau construction for L1 and the provable/rejected verdict.

A branch is a sequence of ever-growing disjunctions: each reduction appends a
negated formula to the formula being reduced, ``G`` becomes ``G ∨ ∼X``.  The
disjunction reduction ``∨−`` splits the branch in two.  A rule is applied only
if the formula is not closed and the new negated formula is not already a
negative part; under that proviso every branch terminates, either closed or
with a Hintikka formula.
"""

from __future__ import annotations

import enum
import functools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .parts import NEG, POS, Closure, find_closure, iter_parts, part_at, Step
from .syntax import Eps, Formula, Not, Or, parse_formula, render, subformulas, variables

__all__ = [
    "Rule",
    "Mode",
    "RuleInstance",
    "Node",
    "Verdict",
    "is_hintikka",
    "applicable",
    "build_tableau",
    "decide",
    "is_provable",
    "default_strategy",
    "random_strategy",
    "tableau_to_json",
    "verdict_to_json",
    "check_tableau",
    "TableauCheck",
    "branch_bound",
]


class Rule(str, enum.Enum):
    OR_NEG = "or-"
    EPS1 = "eps1"
    EPS2 = "eps2"
    EPS3B = "eps3b"
    EPS3 = "eps3"


class Mode(str, enum.Enum):
    """Which third epsilon rule is in force: ε3b (default) or the original ε3."""

    EPS3B = "eps3b"
    EPS3 = "eps3"


_RULE_ORDER = {Rule.EPS1: 0, Rule.EPS2: 1, Rule.EPS3B: 2, Rule.EPS3: 2, Rule.OR_NEG: 3}


@dataclass(frozen=True)
class RuleInstance:
    rule: Rule
    principals: tuple          # one or two occurrence paths
    introduced: tuple          # the negated formula appended on each child

    @property
    def is_split(self) -> bool:
        return self.rule is Rule.OR_NEG

    def children(self, f: Formula) -> list[Formula]:
        return [Or(f, x) for x in self.introduced]


@dataclass
class Node:
    formula: Formula
    rule: Optional[RuleInstance] = None
    children: list["Node"] = field(default_factory=list)
    leaf: Optional[str] = None             # "closed" | "hintikka"
    witness: Optional[Closure] = None

    def leaves(self) -> Iterator["Node"]:
        if not self.children:
            yield self
        for c in self.children:
            yield from c.leaves()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)


@dataclass
class Verdict:
    provable: bool
    tableau: Node
    witness_branch: tuple = ()             # child indices from root to the Hintikka leaf
    hintikka: Optional[Formula] = None

    @property
    def kind(self) -> str:
        return "provable" if self.provable else "rejected"

    def branch_formulas(self) -> list[Formula]:
        """Formulas along the witness branch, root first."""
        node, out = self.tableau, [self.tableau.formula]
        for i in self.witness_branch:
            node = node.children[i]
            out.append(node.formula)
        return out


# ---------------------------------------------------------------------------
# Formula analysis


@dataclass
class _Analysis:
    pos: set
    neg: set
    neg_atoms: dict            # Eps -> first path, in order of occurrence
    neg_ors: dict              # Or -> first path
    closure: Optional[Closure]


def _analyse(f: Formula) -> _Analysis:
    pos: set = set()
    neg: set = set()
    neg_atoms: dict = {}
    neg_ors: dict = {}
    first_pos: dict = {}
    first_neg: dict = {}
    for o in iter_parts(f):
        g = o.formula
        if o.polarity is POS:
            pos.add(g)
            first_pos.setdefault(g, o.path)
        else:
            neg.add(g)
            first_neg.setdefault(g, o.path)
            if isinstance(g, Eps):
                neg_atoms.setdefault(g, o.path)
            elif isinstance(g, Or):
                neg_ors.setdefault(g, o.path)
    closure = None
    if not pos.isdisjoint(neg):
        closure = find_closure(f)
    return _Analysis(pos, neg, neg_atoms, neg_ors, closure)


def is_hintikka(f: Formula) -> bool:
    """Check the five Hintikka conditions directly."""
    a = _analyse(f)
    if a.closure is not None:
        return False
    neg = a.neg
    for o in a.neg_ors:
        if o.lhs not in neg and o.rhs not in neg:
            return False
    atoms = list(a.neg_atoms)
    for x in atoms:
        if Eps(x.left, x.left) not in neg:
            return False
    for x in atoms:
        for y in atoms:
            if x.right != y.left:
                continue
            if Eps(x.left, y.right) not in neg:
                return False
            if y.left == y.right and Eps(x.right, x.left) not in neg:
                return False
    return True


def _instances(f: Formula, a: _Analysis, mode: Mode) -> list[RuleInstance]:
    if a.closure is not None:
        return []
    neg = a.neg
    atoms = list(a.neg_atoms.items())
    out: list[RuleInstance] = []
    for x, p in atoms:
        new = Eps(x.left, x.left)
        if new not in neg:
            out.append(RuleInstance(Rule.EPS1, (p,), (Not(new),)))
    for x, p in atoms:
        for y, q in atoms:
            if x.right != y.left:
                continue
            new = Eps(x.left, y.right)
            if new not in neg:
                out.append(RuleInstance(Rule.EPS2, (p, q), (Not(new),)))
    for x, p in atoms:
        for y, q in atoms:
            if x.right != y.left:
                continue
            if mode is Mode.EPS3B and y.left != y.right:
                continue
            new = Eps(x.right, x.left)
            if new not in neg:
                rule = Rule.EPS3B if mode is Mode.EPS3B else Rule.EPS3
                out.append(RuleInstance(rule, (p, q), (Not(new),)))
    for o, p in a.neg_ors.items():
        if o.lhs not in neg and o.rhs not in neg:
            out.append(RuleInstance(Rule.OR_NEG, (p,), (Not(o.lhs), Not(o.rhs))))
    return out


def applicable(f: Formula, mode: Mode = Mode.EPS3B) -> list[RuleInstance]:
    """All rule instances allowed on ``f`` under the reduction proviso."""
    return _instances(f, _analyse(f), Mode(mode))


# ---------------------------------------------------------------------------
# Strategies


Strategy = Callable[[Formula, Sequence[RuleInstance]], RuleInstance]


def _closes(f: Formula, inst: RuleInstance) -> bool:
    for child in inst.children(f):
        a = _analyse(child)
        if a.closure is None:
            return False
    return True


def default_strategy(f: Formula, instances: Sequence[RuleInstance]) -> RuleInstance:
    """Prefer an instance that closes every child; otherwise ε-rules before ∨−.

    ``instances`` arrive ordered by rule kind then principal position, so the
    first non-closing one is always an ε-rule when any is available.
    """
    for inst in instances:
        if _closes(f, inst):
            return inst
    return instances[0]


def random_strategy(seed: int) -> Strategy:
    rng = random.Random(seed)

    def choose(f: Formula, instances: Sequence[RuleInstance]) -> RuleInstance:
        return rng.choice(list(instances))

    return choose


def branch_bound(f: Formula) -> int:
    """Upper bound on the number of reductions along any branch."""
    v = len(variables(f))
    return len(set(subformulas(f))) + 3 * v * v


def build_tableau(f: Formula, strategy: Optional[Strategy] = None, mode: Mode = Mode.EPS3B) -> Verdict:
    """Reduce ``f`` to a finite tableau and read off the verdict."""
    mode = Mode(mode)
    strategy = strategy or default_strategy
    bound = branch_bound(f)

    def expand(g: Formula, depth: int) -> Node:
        if depth > bound:
            raise RuntimeError(f"branch exceeded bound {bound}; reduction proviso violated")
        a = _analyse(g)
        if a.closure is not None:
            return Node(g, leaf="closed", witness=a.closure)
        instances = _instances(g, a, mode)
        if not instances:
            return Node(g, leaf="hintikka")
        inst = strategy(g, instances)
        node = Node(g, rule=inst)
        node.children = [expand(c, depth + 1) for c in inst.children(g)]
        return node

    root = expand(f, 0)
    branch = _leftmost_open(root)
    if branch is None:
        return Verdict(True, root)
    leaf = root
    for i in branch:
        leaf = leaf.children[i]
    return Verdict(False, root, branch, leaf.formula)


def _leftmost_open(node: Node) -> Optional[tuple]:
    if not node.children:
        return () if node.leaf == "hintikka" else None
    for i, child in enumerate(node.children):
        sub = _leftmost_open(child)
        if sub is not None:
            return (i,) + sub
    return None


def decide(f: Formula, mode: Mode = Mode.EPS3B) -> Verdict:
    """Build the tableau with the default strategy."""
    return build_tableau(f, None, mode)


@functools.lru_cache(maxsize=200_000)
def is_provable(f: Formula, mode: Mode = Mode.EPS3B) -> bool:
    """Memoised provability test, used when certifying accepted steps."""
    return decide(f, mode).provable


# ---------------------------------------------------------------------------
# Certificates


def _path_str(path) -> str:
    return "".join(Step(s).value for s in path)


def _closure_json(c: Closure) -> dict:
    return {
        "formula": render(c.formula),
        "positive": _path_str(c.positive),
        "negative": _path_str(c.negative),
    }


def tableau_to_json(node: Node) -> dict:
    out: dict = {"formula": render(node.formula)}
    if node.rule is not None:
        out["rule"] = node.rule.rule.value
        out["principals"] = [_path_str(p) for p in node.rule.principals]
        out["introduced"] = [render(x) for x in node.rule.introduced]
    out["children"] = [tableau_to_json(c) for c in node.children]
    if node.leaf is not None:
        out["leaf"] = node.leaf
    if node.witness is not None:
        out["witness"] = _closure_json(node.witness)
    return out


def verdict_to_json(v: Verdict, mode: Mode = Mode.EPS3B) -> dict:
    out = {
        "kind": "tableau",
        "mode": Mode(mode).value,
        "verdict": v.kind,
        "root": render(v.tableau.formula),
        "tableau": tableau_to_json(v.tableau),
    }
    if not v.provable:
        out["witness_branch"] = list(v.witness_branch)
        out["hintikka"] = render(v.hintikka)
    return out


@dataclass
class TableauCheck:
    ok: bool
    node: tuple = ()          # child-index path of the first offending node
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


class _Bad(Exception):
    def __init__(self, node: tuple, reason: str):
        self.node = node
        self.reason = reason


def _expected_introduced(rule: Rule, principals: list[Formula], mode: Mode) -> list[Formula]:
    if rule is Rule.OR_NEG:
        (o,) = principals
        if not isinstance(o, Or):
            raise ValueError("principal of or- must be a disjunction")
        return [Not(o.lhs), Not(o.rhs)]
    if not all(isinstance(p, Eps) for p in principals):
        raise ValueError("principals of epsilon rules must be atoms")
    if rule is Rule.EPS1:
        (x,) = principals
        return [Not(Eps(x.left, x.left))]
    x, y = principals
    if x.right != y.left:
        raise ValueError("principals do not share the middle variable")
    if rule is Rule.EPS2:
        return [Not(Eps(x.left, y.right))]
    if rule is Rule.EPS3B:
        if mode is not Mode.EPS3B:
            raise ValueError("eps3b not available in eps3 mode")
        if y.left != y.right:
            raise ValueError("second principal of eps3b must be reflexive")
        return [Not(Eps(x.right, x.left))]
    if rule is Rule.EPS3:
        if mode is not Mode.EPS3:
            raise ValueError("eps3 not available in eps3b mode")
        return [Not(Eps(x.right, x.left))]
    raise ValueError(f"unknown rule {rule}")


def check_tableau(cert: dict, mode: Optional[Mode] = None) -> TableauCheck:
    """Independently re-validate a serialized tableau certificate."""
    try:
        mode = Mode(mode or cert.get("mode", "eps3b"))
        root_text = cert["root"]
        tree = cert["tableau"]
        root = parse_formula(root_text, allow_reserved=True)
        if parse_formula(tree["formula"], allow_reserved=True) != root:
            raise _Bad((), "tableau root differs from stated root")
        leaves: list[tuple[tuple, str]] = []
        _check_node(tree, root, (), mode, leaves)
        all_closed = all(kind == "closed" for _, kind in leaves)
        claimed = cert.get("verdict")
        if claimed == "provable" and not all_closed:
            raise _Bad((), "verdict provable but some leaf is open")
        if claimed == "rejected":
            if all_closed:
                raise _Bad((), "verdict rejected but every leaf is closed")
            if "witness_branch" in cert:
                branch = tuple(cert["witness_branch"])
                if (branch, "hintikka") not in leaves:
                    raise _Bad(branch, "witness branch does not end in a Hintikka leaf")
        elif claimed != "provable":
            raise _Bad((), f"unknown verdict {claimed!r}")
    except _Bad as exc:
        return TableauCheck(False, exc.node, exc.reason)
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        return TableauCheck(False, (), f"malformed certificate: {exc}")
    return TableauCheck(True)


def _check_node(tree: dict, f: Formula, where: tuple, mode: Mode, leaves: list) -> None:
    a = _analyse(f)
    children = tree.get("children", [])
    if not children:
        kind = tree.get("leaf")
        if kind == "closed":
            if a.closure is None:
                raise _Bad(where, "leaf marked closed has no complementary parts")
            w = tree.get("witness")
            if w is not None:
                g = parse_formula(w["formula"], allow_reserved=True)
                p = part_at(f, tuple(w["positive"]))
                n = part_at(f, tuple(w["negative"]))
                if p.formula != g or p.polarity is not POS or n.formula != g or n.polarity is not NEG:
                    raise _Bad(where, "closure witness does not address the stated parts")
        elif kind == "hintikka":
            if not is_hintikka(f):
                raise _Bad(where, "leaf marked hintikka is not a Hintikka formula")
            if _instances(f, a, mode):
                raise _Bad(where, "leaf marked hintikka still admits a reduction")
        else:
            raise _Bad(where, f"leaf without a valid status: {kind!r}")
        leaves.append((where, kind))
        return
    if a.closure is not None:
        raise _Bad(where, "reduction applied to a closed formula")
    try:
        rule = Rule(tree["rule"])
        principals = []
        for p in tree["principals"]:
            occ = part_at(f, tuple(p))
            if occ.polarity is not NEG:
                raise ValueError("principal is not a negative part")
            principals.append(occ.formula)
        expected = _expected_introduced(rule, principals, mode)
    except ValueError as exc:
        raise _Bad(where, str(exc)) from None
    stated = [parse_formula(x, allow_reserved=True) for x in tree.get("introduced", [])]
    if stated and stated != expected:
        raise _Bad(where, "introduced formulas do not match the rule")
    for x in expected:
        if x.arg in a.neg:
            raise _Bad(where, f"proviso violated: {render(x.arg)} already a negative part")
    if len(children) != len(expected):
        raise _Bad(where, "wrong number of children for the rule")
    for i, (child, x) in enumerate(zip(children, expected)):
        g = parse_formula(child["formula"], allow_reserved=True)
        if g != Or(f, x):
            raise _Bad(where + (i,), "child is not the parent extended by the introduced formula")
        _check_node(child, g, where + (i,), mode, leaves)
