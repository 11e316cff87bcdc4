"""Axiomatic rejection: building and checking derivations of non-theorems.

Two systems are supported.

``HAR`` rejects ``εa0a0`` and ``∼εa0a0`` outright (``a0`` is a name variable
reserved for this purpose) and closes under three rules:

* reversed modus ponens: from ``⊢ A ⊃ B`` and ``⊣ B`` infer ``⊣ A``;
* reversed substitution: from ``⊣ A`` infer ``⊣ B`` when ``A`` is an instance
  of ``B`` under a renaming of name variables;
* appending an atom: from ``⊣ A`` infer ``⊣ A ∨ εab`` when ``A`` is a
  Hintikka disjunction of literals and ``εab`` is not a negative part of it.

``HL1`` takes every Hintikka formula as rejected and keeps only reversed
modus ponens.

Accepted steps (``⊢``) are certified by running the tableau prover.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .parts import flatten, negative_parts
from .syntax import (
    RESERVED_VAR,
    Eps,
    Formula,
    Not,
    Or,
    disj,
    is_literal,
    parse_formula,
    render,
    size,
    substitute,
    variables,
)
from .tableau import decide, is_hintikka, is_provable

__all__ = [
    "System",
    "StepRule",
    "RejectionStep",
    "RejectionDerivation",
    "CheckResult",
    "NotHintikka",
    "IsProvable",
    "check_derivation",
    "reject_hintikka",
    "reject_formula",
    "reject_formula_hl1",
    "derivation_to_json",
    "derivation_from_json",
]


class System(str, enum.Enum):
    HAR = "HAR"
    HL1 = "HL1"


class StepRule(str, enum.Enum):
    THESIS = "thesis"
    AX_EPS = "axiom-eps"
    AX_NEG_EPS = "axiom-not-eps"
    MP = "reverse-mp"
    SUBST = "reverse-subst"
    APPEND = "append-atom"
    HL1_AXIOM = "hintikka-axiom"
    HL1_MP = "hl1-reverse-mp"


_ALLOWED = {
    System.HAR: {StepRule.THESIS, StepRule.AX_EPS, StepRule.AX_NEG_EPS, StepRule.MP, StepRule.SUBST, StepRule.APPEND},
    System.HL1: {StepRule.THESIS, StepRule.HL1_AXIOM, StepRule.HL1_MP},
}

ACCEPTED = "+"
REJECTED = "-"

DESIGNATED = Eps(RESERVED_VAR, RESERVED_VAR)


class NotHintikka(ValueError):
    pass


class IsProvable(ValueError):
    pass


@dataclass(frozen=True)
class RejectionStep:
    index: int
    judgment: str                      # "+" accepted, "-" rejected
    formula: Formula
    rule: StepRule
    premises: tuple = ()
    substitution: Optional[tuple] = None   # sorted (from, to) pairs
    appended: Optional[Formula] = None

    @property
    def mapping(self) -> dict:
        return dict(self.substitution or ())


@dataclass(frozen=True)
class RejectionDerivation:
    system: System
    steps: tuple
    goal: Formula

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    index: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------------
# Checking


class _Fail(Exception):
    def __init__(self, index: Optional[int], reason: str):
        super().__init__(reason)
        self.index = index
        self.reason = reason


def _implication_parts(f: Formula) -> Optional[tuple[Formula, Formula]]:
    """``A ⊃ B`` is ``∼A ∨ B``; return ``(A, B)`` or None."""
    if isinstance(f, Or) and isinstance(f.lhs, Not):
        return f.lhs.arg, f.rhs
    return None


def _premise(steps: Sequence[RejectionStep], step: RejectionStep, k: int, judgment: str) -> RejectionStep:
    i = step.premises[k]
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < step.index:
        raise _Fail(step.index, f"premise {i!r} does not refer to an earlier step")
    p = steps[i]
    if p.judgment != judgment:
        word = "accepted" if judgment == ACCEPTED else "rejected"
        raise _Fail(step.index, f"premise {i} is not {word}")
    return p


def _arity(step: RejectionStep, n: int) -> None:
    if len(step.premises) != n:
        raise _Fail(step.index, f"{step.rule.value} takes {n} premise(s), got {len(step.premises)}")


def _check_step(system: System, steps: Sequence[RejectionStep], step: RejectionStep) -> None:
    rule, idx, f = step.rule, step.index, step.formula
    if rule not in _ALLOWED[system]:
        raise _Fail(idx, f"{rule.value} is not a rule of {system.value}")
    expected = ACCEPTED if rule is StepRule.THESIS else REJECTED
    if step.judgment != expected:
        raise _Fail(idx, f"{rule.value} must conclude a {'thesis' if expected == ACCEPTED else 'rejection'}")
    if rule is not StepRule.SUBST and step.substitution is not None:
        raise _Fail(idx, "substitution given on a step that is not a substitution")
    if rule is not StepRule.APPEND and step.appended is not None:
        raise _Fail(idx, "appended atom given on a step that does not append")

    if rule is StepRule.THESIS:
        _arity(step, 0)
        if not is_provable(f):
            raise _Fail(idx, "accepted formula is not provable")
    elif rule is StepRule.AX_EPS:
        _arity(step, 0)
        if f != DESIGNATED:
            raise _Fail(idx, f"axiom must be {render(DESIGNATED)}")
    elif rule is StepRule.AX_NEG_EPS:
        _arity(step, 0)
        if f != Not(DESIGNATED):
            raise _Fail(idx, f"axiom must be {render(Not(DESIGNATED))}")
    elif rule is StepRule.HL1_AXIOM:
        _arity(step, 0)
        if not is_hintikka(f):
            raise _Fail(idx, "axiom is not a Hintikka formula")
    elif rule in (StepRule.MP, StepRule.HL1_MP):
        _arity(step, 2)
        thesis = _premise(steps, step, 0, ACCEPTED)
        rejected = _premise(steps, step, 1, REJECTED)
        parts = _implication_parts(thesis.formula)
        if parts is None:
            raise _Fail(idx, "first premise is not an implication")
        antecedent, consequent = parts
        if consequent != rejected.formula:
            raise _Fail(idx, "consequent of the implication differs from the rejected premise")
        if antecedent != f:
            raise _Fail(idx, "antecedent of the implication differs from the conclusion")
    elif rule is StepRule.SUBST:
        _arity(step, 1)
        if step.substitution is None:
            raise _Fail(idx, "substitution missing")
        premise = _premise(steps, step, 0, REJECTED)
        if substitute(f, step.mapping) != premise.formula:
            raise _Fail(idx, "premise is not the substitution instance of the conclusion")
    elif rule is StepRule.APPEND:
        _arity(step, 1)
        premise = _premise(steps, step, 0, REJECTED)
        a, atom = premise.formula, step.appended
        if not isinstance(atom, Eps):
            raise _Fail(idx, "appended formula must be an atom")
        if not _is_literal_disjunction(a):
            raise _Fail(idx, "premise is not a disjunction of literals")
        if not is_hintikka(a):
            raise _Fail(idx, "premise is not a Hintikka formula")
        if atom in negative_parts(a):
            raise _Fail(idx, "appended atom occurs negated in the premise")
        if f != Or(a, atom):
            raise _Fail(idx, "conclusion is not the premise with the atom appended")
    else:  # pragma: no cover - exhaustive over StepRule
        raise _Fail(idx, f"unknown rule {rule!r}")


def _is_literal_disjunction(f: Formula) -> bool:
    if isinstance(f, Or):
        return _is_literal_disjunction(f.lhs) and _is_literal_disjunction(f.rhs)
    return is_literal(f)


def check_derivation(d: RejectionDerivation) -> CheckResult:
    """Validate every step; report the first failing step and why."""
    try:
        system = System(d.system)
    except ValueError:
        return CheckResult(False, None, f"unknown system {d.system!r}")
    if not d.steps:
        return CheckResult(False, None, "empty derivation")
    try:
        for pos, step in enumerate(d.steps):
            if step.index != pos:
                raise _Fail(pos, f"step index {step.index} out of sequence")
            if step.judgment not in (ACCEPTED, REJECTED):
                raise _Fail(pos, f"unknown judgment {step.judgment!r}")
            _check_step(system, d.steps, step)
        last = d.steps[-1]
        if last.judgment != REJECTED or last.formula != d.goal:
            raise _Fail(last.index, "last step does not reject the goal")
    except _Fail as e:
        return CheckResult(False, e.index, e.reason)
    return CheckResult(True)


# ---------------------------------------------------------------------------
# Construction


class _Builder:
    def __init__(self) -> None:
        self.steps: list[RejectionStep] = []

    def add(self, judgment, formula, rule, premises=(), substitution=None, appended=None) -> int:
        i = len(self.steps)
        if substitution is not None:
            substitution = tuple(sorted(substitution.items()))
        self.steps.append(RejectionStep(i, judgment, formula, rule, tuple(premises), substitution, appended))
        return i

    def back(self, rejected: int, antecedent: Formula, rule: StepRule = StepRule.MP) -> int:
        """From ``⊣ B`` (step ``rejected``) reject ``antecedent`` via ``⊢ antecedent ⊃ B``."""
        b = self.steps[rejected].formula
        if antecedent == b:
            return rejected
        t = self.add(ACCEPTED, Or(Not(antecedent), b), StepRule.THESIS)
        return self.add(REJECTED, antecedent, rule, (t, rejected))

    def derivation(self, system: System, goal: Formula) -> RejectionDerivation:
        return RejectionDerivation(system, tuple(self.steps), goal)


def _dedupe(items) -> list:
    return list(dict.fromkeys(items))


def _collapse(b: _Builder, target: Formula, axiom: StepRule) -> int:
    """Reject a one-signed literal disjunction by collapsing all names to ``a0``."""
    mapping = {v: RESERVED_VAR for v in variables(target)}
    collapsed = substitute(target, mapping)
    base = DESIGNATED if axiom is StepRule.AX_EPS else Not(DESIGNATED)
    i = b.add(REJECTED, base, axiom)
    i = b.back(i, collapsed)
    if collapsed != target:
        i = b.add(REJECTED, target, StepRule.SUBST, (i,), substitution=mapping)
    return i


def _reject_literals(b: _Builder, literals: list[Formula]) -> int:
    negatives = [x for x in literals if isinstance(x, Not)]
    positives = [x for x in literals if isinstance(x, Eps)]
    if not negatives:
        return _collapse(b, disj(*positives), StepRule.AX_EPS)
    i = _collapse(b, disj(*negatives), StepRule.AX_NEG_EPS)
    for atom in positives:
        current = b.steps[i].formula
        i = b.add(REJECTED, Or(current, atom), StepRule.APPEND, (i,), appended=atom)
    return i


def _build_hintikka(b: _Builder, h: Formula) -> int:
    items = flatten(h)
    # drop negated disjunctions, larger ones first
    compound = sorted(
        (x for x in items if not is_literal(x)),
        key=lambda x: -size(x),
    )
    chain = [h, disj(*items)]
    remaining = list(items)
    for x in compound:
        remaining.remove(x)
        chain.append(disj(*remaining))
    chain.append(disj(*_dedupe(remaining)))

    i = _reject_literals(b, _dedupe(remaining))
    i = b.back(i, chain[-1])
    for antecedent in reversed(chain[:-1]):
        i = b.back(i, antecedent)
    return i


def reject_hintikka(h: Formula) -> RejectionDerivation:
    """A derivation of ``⊣ h`` in the system with two axioms."""
    if not is_hintikka(h):
        raise NotHintikka(f"not a Hintikka formula: {render(h)}")
    b = _Builder()
    _build_hintikka(b, h)
    return b.derivation(System.HAR, h)


def _witness(f: Formula) -> list[Formula]:
    v = decide(f)
    if v.provable:
        raise IsProvable(f"formula is provable: {render(f)}")
    return v.branch_formulas()


def reject_formula(f: Formula) -> RejectionDerivation:
    """Reject ``f`` through the Hintikka formula closing its open tableau branch."""
    branch = _witness(f)
    b = _Builder()
    i = _build_hintikka(b, branch[-1])
    for antecedent in reversed(branch[:-1]):
        i = b.back(i, antecedent)
    return b.derivation(System.HAR, f)


def reject_formula_hl1(f: Formula) -> RejectionDerivation:
    """As :func:`reject_formula`, taking the Hintikka leaf as an axiom."""
    branch = _witness(f)
    b = _Builder()
    i = b.add(REJECTED, branch[-1], StepRule.HL1_AXIOM)
    for antecedent in reversed(branch[:-1]):
        i = b.back(i, antecedent, StepRule.HL1_MP)
    return b.derivation(System.HL1, f)


# ---------------------------------------------------------------------------
# JSON


def _step_to_json(s: RejectionStep) -> dict:
    out: dict = {
        "index": s.index,
        "judgment": s.judgment,
        "formula": render(s.formula),
        "rule": s.rule.value,
        "premises": list(s.premises),
    }
    if s.substitution is not None:
        out["substitution"] = dict(s.substitution)
    if s.appended is not None:
        out["appended"] = render(s.appended)
    return out


def derivation_to_json(d: RejectionDerivation) -> list:
    return [_step_to_json(s) for s in d.steps]


class CertificateError(ValueError):
    pass


def _parse(text) -> Formula:
    if not isinstance(text, str):
        raise CertificateError(f"expected formula text, got {text!r}")
    return parse_formula(text, allow_reserved=True)


def _step_from_json(data: Mapping) -> RejectionStep:
    try:
        rule = StepRule(data["rule"])
    except (KeyError, ValueError):
        raise CertificateError(f"unknown rule {data.get('rule')!r}") from None
    subst = data.get("substitution")
    if subst is not None:
        if not isinstance(subst, Mapping) or not all(isinstance(v, str) for v in subst.values()):
            raise CertificateError("substitution must map names to names")
        subst = tuple(sorted(subst.items()))
    appended = data.get("appended")
    premises = data.get("premises", [])
    if not isinstance(premises, list):
        raise CertificateError("premises must be a list")
    return RejectionStep(
        index=data.get("index"),
        judgment=data.get("judgment"),
        formula=_parse(data.get("formula")),
        rule=rule,
        premises=tuple(premises),
        substitution=subst,
        appended=None if appended is None else _parse(appended),
    )


def _infer_system(steps: Sequence[RejectionStep]) -> System:
    if any(s.rule in (StepRule.HL1_AXIOM, StepRule.HL1_MP) for s in steps):
        return System.HL1
    return System.HAR


def derivation_from_json(data: Union[list, Mapping]) -> RejectionDerivation:
    """Accept a bare step array (system inferred) or ``{system, steps, goal?}``.

    Raises :class:`CertificateError` (or :class:`ParseError`) on malformed input.
    """
    if isinstance(data, Mapping):
        raw, system, goal_text = data.get("steps"), data.get("system"), data.get("goal")
    else:
        raw, system, goal_text = data, None, None
    if not isinstance(raw, list) or not raw:
        raise CertificateError("derivation needs a nonempty list of steps")
    if not all(isinstance(s, Mapping) for s in raw):
        raise CertificateError("every step must be an object")
    steps = tuple(_step_from_json(s) for s in raw)
    sys_ = _infer_system(steps) if system is None else system
    goal = steps[-1].formula if goal_text is None else _parse(goal_text)
    return RejectionDerivation(sys_, steps, goal)
