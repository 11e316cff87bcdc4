import itertools

import pytest
from hypothesis import given, settings

from l1onto.model import L1Model, eval_atom, evaluate
from l1onto.syntax import Eps
from l1onto.tableau import decide
from l1onto.translate import (
    Equals,
    Exists,
    FAnd,
    FImplies,
    FNot,
    FolStructure,
    FOr,
    Forall,
    Pred,
    ResourceLimit,
    UnboundVariable,
    achievable_valuations,
    atom_semantics_equivalence,
    eval_fol,
    oracle_countermodel,
    oracle_valid,
    render_fol,
    render_tptp,
    t_transform,
)

from conftest import P, formulas

S = frozenset


def description(a, b, k=1):
    x, y = f"x{k}", f"y{k}"
    return FAnd(
        Exists(x, FAnd(Pred(f"F_{a}", x), Pred(f"F_{b}", x))),
        Forall(x, Forall(y, FImplies(FAnd(Pred(f"F_{a}", x), Pred(f"F_{a}", y)), Equals(x, y)))),
    )


def test_atom_expansion():
    assert t_transform(Eps("a", "b")) == description("a", "b")


def test_homomorphic_on_connectives():
    assert t_transform(P("~eps(a,b)")) == FNot(description("a", "b"))
    assert t_transform(P("eps(a,b) | eps(b,c)")) == FOr(description("a", "b", 1), description("b", "c", 2))


def test_bound_variables_numbered_per_occurrence():
    text = render_fol(t_transform(P("eps(a,b) | ~eps(a,b)")))
    assert "x1" in text and "x2" in text and "x3" not in text


def test_fol_eval_examples():
    s = FolStructure({1, 2}, {"F_a": {1}, "F_b": {1, 2}})
    assert eval_fol(s, t_transform(Eps("a", "b")))
    s = FolStructure({1}, {"F_a": set()})
    assert not eval_fol(s, t_transform(Eps("a", "a")))


def test_axiom_one_true_in_every_small_structure():
    phi = t_transform(P("~eps(a,b) | eps(a,a)"))
    dom = [1, 2, 3]
    subsets = [S(c) for r in range(4) for c in itertools.combinations(dom, r)]
    for fa, fb in itertools.product(subsets, repeat=2):
        assert eval_fol(FolStructure(dom, {"F_a": fa, "F_b": fb}), phi)


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        eval_fol(FolStructure({1}, {}), Pred("F_a", "x"))


def test_structure_validation():
    with pytest.raises(ValueError):
        FolStructure(set(), {})
    with pytest.raises(ValueError):
        FolStructure({1}, {"F_a": {2}})


def test_atom_equivalence_examples():
    assert atom_semantics_equivalence({1}, {1, 2}, {1, 2})
    assert not atom_semantics_equivalence(set(), {1}, {1})
    assert not atom_semantics_equivalence({1, 2}, {1, 2}, {1, 2})


def test_atom_equivalence_exhaustive_small():
    universe = [1, 2, 3]
    subsets = [S(c) for r in range(4) for c in itertools.combinations(universe, r)]
    for a, b in itertools.product(subsets, repeat=2):
        m = L1Model({"a": a, "b": b}, universe)
        assert atom_semantics_equivalence(a, b, universe) == eval_atom(m, "a", "b")


@pytest.mark.parametrize(
    "text, valid",
    [
        ("~eps(a,b) | eps(a,a)", True),
        ("eps(a,b) & eps(b,c) -> eps(a,c)", True),
        ("eps(a,b) & eps(b,b) -> eps(b,a)", True),
        ("eps(a,b) | eps(b,c) -> eps(a,a)", False),
        ("eps(a,a)", False),
    ],
)
def test_oracle_examples(text, valid):
    assert oracle_valid(P(text)) is valid


def test_countermodel_is_a_witness():
    f = P("eps(a,b) | eps(b,c) -> eps(a,a)")
    m = oracle_countermodel(f)
    assert m is not None and not evaluate(m, f)
    assert oracle_countermodel(P("~eps(a,b) | eps(a,a)")) is None


def test_oracle_cap():
    f = P("eps(a,b) | eps(c,d) | eps(e,f)")
    with pytest.raises(ResourceLimit):
        oracle_valid(f)
    with pytest.raises(ResourceLimit):
        oracle_valid(P("eps(a,b)"), cap=1)


def test_single_name_valuations():
    # εaa is either true or false, nothing else
    assert set(achievable_valuations(1, 2)) == {0, 1}


def test_valuations_match_brute_force():
    # every subset assignment over {1..4} for two names gives a listed valuation
    universe = [1, 2, 3, 4]
    subsets = [S(c) for r in range(5) for c in itertools.combinations(universe, r)]
    seen = set()
    for a, b in itertools.product(subsets, repeat=2):
        vals = (a, b)
        mask = 0
        for i, j in itertools.product(range(2), repeat=2):
            if len(vals[i]) == 1 and vals[i] <= vals[j]:
                mask |= 1 << (i * 2 + j)
        seen.add(mask)
    assert seen == set(achievable_valuations(2, 4))


@pytest.mark.parametrize("v", [1, 2, 3])
def test_enlarged_universe_adds_no_valuations(v):
    assert set(achievable_valuations(v, 2 * v)) == set(achievable_valuations(v, 2 * v + 2))


@given(formulas(max_leaves=12))
@settings(max_examples=200)
def test_provable_iff_oracle_valid(f):
    assert decide(f).provable == oracle_valid(f)


def test_tptp_output():
    out = render_tptp(t_transform(P("eps(a,b)")), name="t1")
    assert out.startswith("fof(t1, conjecture, ") and out.endswith(").")
    assert "? [X1] : (f_a(X1) & f_b(X1))" in out
    assert "X1 = Y1" in out
