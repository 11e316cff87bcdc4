import itertools
import random

import pytest
from hypothesis import given, settings

from l1onto.model import (
    L1Model,
    NotHintikka,
    analyze,
    audit_L_axiom,
    audit_l1_axioms,
    build_model,
    eval_atom,
    evaluate,
    model_from_json,
    model_to_json,
    singular_names,
    upgrade_to_L,
    value_holds,
)
from l1onto.parts import POS, iter_parts
from l1onto.syntax import render
from l1onto.tableau import decide, is_hintikka

from conftest import P, formulas

# worked Hintikka formulas (three of them with obvious misprints repaired)
H_CHAIN = "~eps(a,b) | ~eps(b,a) | ~eps(a,a) | ~eps(b,b)"
H_ONE_TAIL = "~eps(a,b) | ~eps(b,c) | ~eps(a,c) | ~eps(b,a) | ~eps(a,a) | ~eps(b,b)"
H_SHARED_TAIL = "~eps(a,c) | ~eps(b,c) | eps(a,b) | ~eps(a,a) | ~eps(b,b)"
H_TWO_CHAINS = (
    "~(eps(a,a) | ~eps(b,b)) | ~eps(a,b) | ~eps(d,c) | eps(c,b) | ~eps(b,b) | ~eps(b,a)"
    " | ~eps(a,a) | ~eps(d,d) | ~eps(a,e) | ~eps(b,e)"
)
H_TWO_TAILS = "~eps(a,b) | ~eps(a,c) | ~eps(a,a)"

S = frozenset


def assignment(text):
    return {k: sorted(v) for k, v in build_model(P(text)).assignment.items()}


@pytest.mark.parametrize("text", [H_CHAIN, H_ONE_TAIL, H_SHARED_TAIL, H_TWO_CHAINS, H_TWO_TAILS])
def test_worked_formulas_are_hintikka(text):
    assert is_hintikka(P(text))


def test_chain_without_tails():
    ca = analyze(P(H_CHAIN))
    assert ca.chains == [["a", "b"]] and ca.tails == {} and ca.others == []
    m = build_model(P(H_CHAIN))
    assert assignment(H_CHAIN) == {"a": [1], "b": [1]}
    assert m.universe == {1}


def test_one_tail():
    assert assignment(H_ONE_TAIL) == {"a": [1], "b": [1], "c": [1, 2]}


def test_tail_shared_by_two_chains():
    ca = analyze(P(H_SHARED_TAIL))
    assert ca.chains == [["a"], ["b"]]
    assert ca.tails == {"c": [0, 1]}
    assert assignment(H_SHARED_TAIL) == {"a": [1], "b": [2], "c": [1, 2, 3]}


def test_two_chains_two_tails():
    assert assignment(H_TWO_CHAINS) == {"a": [1], "b": [1], "d": [2], "e": [1, 3], "c": [2, 4]}


def test_one_chain_two_tails():
    ca = analyze(P(H_TWO_TAILS))
    assert ca.chains == [["a"]] and set(ca.tails) == {"b", "c"}
    assert assignment(H_TWO_TAILS) == {"a": [1], "b": [1, 2], "c": [1, 3]}


def test_variables_outside_chains_are_empty():
    h = P("eps(a,b) | ~eps(c,c)")
    m = build_model(h)
    assert m.value("a") == S() and m.value("b") == S() and m.value("c") == S({1})


def test_no_chains_gives_unit_universe():
    m = build_model(P("eps(a,b)"))
    assert m.universe == {1} and m.value("a") == S()


def test_analyze_needs_hintikka():
    with pytest.raises(NotHintikka):
        analyze(P("~eps(a,b)"))
    with pytest.raises(NotHintikka):
        build_model(P("~eps(a,b)"))


def test_atom_truth_examples():
    m = L1Model({"a": {1}, "b": {1, 2}, "e": set(), "t": {1, 3}}, {1, 2, 3})
    assert eval_atom(m, "a", "b")
    assert not any(eval_atom(m, "e", x) for x in "abet")
    assert not eval_atom(m, "t", "t")


def test_atom_truth_table():
    # values: empty, two distinct units, two tail sets over them
    empty, u1, u2 = S(), S({1}), S({2})
    t1, t12 = S({1, 3}), S({1, 2, 4})
    values = [empty, u1, u2, t1, t12]
    for a, b in itertools.product(values, repeat=2):
        expected = len(a) == 1 and a <= b
        assert value_holds(a, b) is expected
    assert value_holds(u1, u1) and value_holds(u1, t1) and value_holds(u2, t12)
    assert not value_holds(u2, t1) and not value_holds(t1, t12) and not value_holds(empty, empty)


def test_falsification_examples():
    assert not evaluate(build_model(P(H_CHAIN)), P(H_CHAIN))
    tauto = P("eps(a,b) | ~eps(a,b)")
    assert evaluate(L1Model({"a": {1}, "b": {1}}, {1}), tauto)
    assert evaluate(L1Model({}, {1}), tauto)
    m = build_model(P(H_TWO_CHAINS))
    for o in iter_parts(P(H_TWO_CHAINS)):
        assert evaluate(m, o.formula) is (o.polarity is not POS)


@given(formulas(max_leaves=12))
@settings(max_examples=150)
def test_countermodel_theorem(f):
    v = decide(f)
    if v.provable:
        return
    h = v.hintikka
    m = build_model(h)
    assert not evaluate(m, f)
    for o in iter_parts(h):
        assert evaluate(m, o.formula) is (o.polarity is not POS)
    assert audit_l1_axioms(m) == []
    ca = analyze(h)
    for t in ca.tails:
        assert all(t not in c for c in ca.chains)


def test_axioms_hold_in_every_small_model():
    universe = [1, 2, 3]
    subsets = [S(c) for r in range(4) for c in itertools.combinations(universe, r)]
    for a, b, c in itertools.product(subsets, repeat=3):
        m = L1Model({"a": a, "b": b, "c": c}, universe)
        assert audit_l1_axioms(m) == []


def test_singular_names_and_upgrade():
    m = build_model(P(H_ONE_TAIL))
    assert singular_names(m) == [S({1, 2})]
    bad = audit_L_axiom(m)
    assert any("a=[1, 2], b=[1, 2]" in line for line in bad)
    u = upgrade_to_L(m)
    assert u.anonymous == (S({2}),)
    assert singular_names(u) == [] and audit_L_axiom(u) == []
    assert u.assignment == m.assignment


def test_upgrade_fixpoint_and_two_singulars():
    m = build_model(P(H_CHAIN))
    assert singular_names(m) == [] and audit_L_axiom(m) == []
    assert upgrade_to_L(m) == m
    m = build_model(P(H_TWO_CHAINS))
    assert set(singular_names(m)) == {S({1, 3}), S({2, 4})}
    assert set(upgrade_to_L(m).anonymous) == {S({3}), S({4})}


def test_singular_needs_exactly_one_named_member():
    m = L1Model({"c": {2, 4}}, {2, 4})
    assert singular_names(m) == []
    m = L1Model({"a": {2}, "b": {4}, "c": {2, 4}}, {2, 4})
    assert singular_names(m) == []
    m = L1Model({"a": {2}, "c": {2, 4}}, {2, 4})
    assert singular_names(m) == [S({2, 4})]


def random_model(rng, universe_size=4, nvars=3):
    universe = list(range(1, universe_size + 1))
    names = "abcd"[:nvars]
    assign = {v: {x for x in universe if rng.random() < 0.4} for v in names}
    if rng.random() < 0.5:
        assign[names[0]] = {rng.choice(universe)}
    return L1Model(assign, universe)


def test_singular_names_characterise_L_models():
    rng = random.Random(11)
    for _ in range(300):
        m = random_model(rng)
        assert (audit_L_axiom(m) == []) == (singular_names(m) == [])
        u = upgrade_to_L(m)
        assert audit_L_axiom(u) == []


@given(formulas(max_leaves=10))
@settings(max_examples=100)
def test_upgrade_preserves_truth(f):
    rng = random.Random(render(f))
    m = random_model(rng)
    assert evaluate(upgrade_to_L(m), f) == evaluate(m, f)


def test_model_validation():
    with pytest.raises(ValueError):
        L1Model({"a": {1}}, set())
    with pytest.raises(ValueError):
        L1Model({"a": {5}}, {1})


def test_model_json_round_trip():
    m = upgrade_to_L(build_model(P(H_TWO_CHAINS)))
    data = model_to_json(m)
    assert data["assignment"]["e"] == [1, 3]
    assert model_from_json(data) == m
