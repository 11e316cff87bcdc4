import pytest
from hypothesis import settings, strategies as st

from l1onto.syntax import Eps, Not, Or, parse_formula

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

NAMES = ("a", "b", "c")


def formulas(names=NAMES, max_leaves=12):
    atoms = st.builds(Eps, st.sampled_from(names), st.sampled_from(names))
    return st.recursive(
        atoms,
        lambda sub: st.one_of(st.builds(Not, sub), st.builds(Or, sub, sub)),
        max_leaves=max_leaves,
    )


def P(text):
    return parse_formula(text)


@pytest.fixture(scope="session")
def corpus():
    from l1onto.corpus import canonical_formulas

    return canonical_formulas()


@pytest.fixture(scope="session")
def corpus_verdicts(corpus):
    from l1onto.tableau import decide

    return [(f, decide(f)) for f in corpus]
