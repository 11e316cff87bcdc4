import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from l1onto.corpus import random_context
from l1onto.parts import POS, find_closure, positive_parts, replace
from l1onto.syntax import Or, render
from l1onto.tableau import (
    Mode,
    Rule,
    applicable,
    branch_bound,
    build_tableau,
    check_tableau,
    decide,
    is_hintikka,
    random_strategy,
    verdict_to_json,
)

from conftest import P, formulas

AX_1_1 = "~eps(a,b) | eps(a,a)"
AX_1_2 = "eps(a,b) & eps(b,c) -> eps(a,c)"
AX_1_3B = "eps(a,b) & eps(b,b) -> eps(b,a)"
AX_1_3 = "eps(a,b) & eps(b,c) -> eps(b,a)"
EX_3_2 = "eps(a,b) | eps(b,c) -> eps(a,a)"


@pytest.mark.parametrize(
    "text, rule, introduced",
    [(AX_1_1, Rule.EPS1, "~eps(a,a)"), (AX_1_2, Rule.EPS2, "~eps(a,c)"), (AX_1_3B, Rule.EPS3B, "~eps(b,a)")],
)
def test_axioms_close_in_one_step(text, rule, introduced):
    f = P(text)
    v = decide(f)
    assert v.provable
    root = v.tableau
    assert root.rule.rule is rule
    assert root.rule.introduced == (P(introduced),)
    (child,) = root.children
    assert child.formula == Or(f, P(introduced))
    assert child.leaf == "closed" and not child.children
    assert child.witness.formula == P(introduced).arg


def test_original_third_axiom_needs_eps3_mode():
    assert decide(P(AX_1_3), Mode.EPS3).provable
    v = decide(P(AX_1_3), Mode.EPS3)
    assert v.tableau.rule.rule is Rule.EPS3 and v.tableau.size() == 2


def test_example_rejection_tableau():
    f = P(EX_3_2)
    v = decide(f)
    assert not v.provable
    root = v.tableau
    assert root.rule.rule is Rule.OR_NEG
    left, right = root.children
    assert left.formula == Or(f, P("~eps(a,b)"))
    assert left.rule.rule is Rule.EPS1
    assert left.children[0].leaf == "closed"
    assert right.formula == Or(f, P("~eps(b,c)"))
    assert right.rule.rule is Rule.EPS1
    (leaf,) = right.children
    assert leaf.leaf == "hintikka"
    assert leaf.formula == P("((~(eps(a,b) | eps(b,c)) | eps(a,a)) | ~eps(b,c)) | ~eps(b,b)")
    assert v.hintikka == leaf.formula
    assert v.witness_branch == (1, 0)


def test_excluded_middle_and_its_negation():
    assert decide(P("eps(a,b) | ~eps(a,b)")).provable
    assert not decide(P("~(eps(a,b) | ~eps(a,b))")).provable


@pytest.mark.parametrize(
    "text, expected",
    [
        ("~eps(a,b) | eps(b,a) | ~eps(a,a)", True),
        ("eps(a,a)", True),
        ("~eps(a,a)", True),
        ("~eps(a,b)", False),
        ("~eps(a,b) | ~eps(b,c) | ~eps(a,c) | ~eps(b,a) | ~eps(a,a) | ~eps(b,b)", True),
        ("eps(a,b) | ~eps(a,b)", False),
    ],
)
def test_is_hintikka_examples(text, expected):
    assert is_hintikka(P(text)) is expected


def test_applicable_examples():
    (inst,) = applicable(P(AX_1_1))
    assert inst.rule is Rule.EPS1 and inst.introduced == (P("~eps(a,a)"),)
    assert applicable(P("~eps(a,b) | eps(b,a) | ~eps(a,a)")) == []
    assert applicable(P("(~eps(a,b) | eps(a,a)) | ~eps(a,a)")) == []


def test_self_pair_instances():
    # εaa with itself gives ∼εaa again, which the proviso filters
    assert applicable(P("~eps(a,a)")) == []


@given(formulas(max_leaves=10))
def test_leaves_are_closed_or_hintikka(f):
    v = decide(f)
    leaves = list(v.tableau.leaves())
    for leaf in leaves:
        if leaf.leaf == "closed":
            assert find_closure(leaf.formula) is not None
        else:
            assert leaf.leaf == "hintikka" and is_hintikka(leaf.formula)
            assert applicable(leaf.formula) == []
    assert v.provable == all(leaf.leaf == "closed" for leaf in leaves)


@given(formulas(max_leaves=10))
def test_branch_length_within_bound(f):
    assert decide(f).tableau.depth() - 1 <= branch_bound(f)


@given(formulas(max_leaves=10))
def test_branch_formulas_are_positive_parts_of_leaf(f):
    v = decide(f)
    if not v.provable:
        pos = positive_parts(v.hintikka)
        for g in v.branch_formulas():
            assert g in pos


@given(formulas(max_leaves=10), st.integers(1, 10_000))
def test_random_strategy_gives_same_verdict(f, seed):
    assert build_tableau(f, random_strategy(seed)).provable == decide(f).provable


@given(formulas(max_leaves=10))
def test_modes_agree(f):
    assert decide(f).provable == decide(f, Mode.EPS3).provable


# --- structural rules -------------------------------------------------------

@given(formulas(max_leaves=6), formulas(max_leaves=6))
def test_thinning_and_interchange(a, b):
    pa = decide(a).provable
    ab, ba = decide(Or(a, b)).provable, decide(Or(b, a)).provable
    assert ab == ba
    if pa:
        assert ab


@given(formulas(max_leaves=8))
def test_contraction(a):
    assert decide(Or(a, a)).provable == decide(a).provable


@given(formulas(max_leaves=5), formulas(max_leaves=5), formulas(max_leaves=5))
def test_association_invariance(a, b, c):
    assert decide(Or(Or(a, b), c)).provable == decide(Or(a, Or(b, c))).provable


@given(formulas(max_leaves=6), st.integers(0, 10_000))
def test_provable_part_makes_context_provable(a, seed):
    rng = random.Random(seed)
    ctx = random_context(rng, POS, depth=3)
    if ctx is None or not decide(a).provable:
        return
    f, path = ctx
    assert decide(replace(f, path, a)).provable


# --- certificates -----------------------------------------------------------

@given(formulas(max_leaves=10))
@settings(max_examples=100)
def test_certificates_check(f):
    for mode in Mode:
        cert = verdict_to_json(decide(f, mode), mode)
        assert check_tableau(json.loads(json.dumps(cert)))


def _nodes(tree, where=()):
    yield where, tree
    for i, c in enumerate(tree.get("children", [])):
        yield from _nodes(c, where + (i,))


def test_certificate_tampering_is_caught():
    cert = verdict_to_json(decide(P(EX_3_2)))
    assert check_tableau(cert)

    bad = json.loads(json.dumps(cert))
    bad["verdict"] = "provable"
    assert not check_tableau(bad)

    bad = json.loads(json.dumps(cert))
    bad["tableau"]["children"][1]["children"][0]["leaf"] = "closed"
    res = check_tableau(bad)
    assert not res and res.node == (1, 0)

    bad = json.loads(json.dumps(cert))
    bad["tableau"]["children"][0]["rule"] = "eps2"
    assert not check_tableau(bad)

    bad = json.loads(json.dumps(cert))
    bad["tableau"]["children"][1]["principals"] = ["R"]
    res = check_tableau(bad)
    assert not res and "negative" in res.reason

    bad = json.loads(json.dumps(cert))
    bad["root"] = "eps(a,b)"
    assert not check_tableau(bad)


def test_certificate_rejects_proviso_violation():
    # ε1 on ∼εab ∨ ∼εaa would re-introduce an existing negative part
    f = P("~eps(a,b) | ~eps(a,a)")
    g = Or(f, P("~eps(a,a)"))
    cert = {
        "kind": "tableau", "mode": "eps3b", "verdict": "rejected", "root": render(f),
        "tableau": {
            "formula": render(f), "rule": "eps1", "principals": ["LN"], "introduced": ["~eps(a,a)"],
            "children": [{"formula": render(g), "children": [], "leaf": "hintikka"}],
        },
    }
    res = check_tableau(cert)
    assert not res and "proviso" in res.reason


def test_eps3_certificate_needs_eps3_mode():
    cert = verdict_to_json(decide(P(AX_1_3), Mode.EPS3), Mode.EPS3)
    assert check_tableau(cert)
    assert not check_tableau(cert, Mode.EPS3B)
