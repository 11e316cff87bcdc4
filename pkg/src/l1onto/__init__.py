"""Decision procedure for L1, the quantifier-free fragment of Leśniewski's ontology.

Tableau proving, axiomatic rejection with checkable derivations, finite
countermodels, and a first-order translation with a bounded semantic oracle.
"""

from .model import L1Model, audit_L_axiom, audit_l1_axioms, build_model, evaluate, singular_names, upgrade_to_L
from .parts import find_closure, flatten, negative_parts, positive_parts, remove
from .rejection import check_derivation, reject_formula, reject_formula_hl1, reject_hintikka
from .syntax import Eps, Not, Or, ParseError, parse, parse_formula, render
from .tableau import Mode, build_tableau, decide, is_hintikka
from .translate import oracle_valid, t_transform

__version__ = "0.1.0"

__all__ = [
    "Eps", "Not", "Or", "ParseError", "parse", "parse_formula", "render",
    "find_closure", "flatten", "negative_parts", "positive_parts", "remove",
    "Mode", "build_tableau", "decide", "is_hintikka",
    "check_derivation", "reject_formula", "reject_formula_hl1", "reject_hintikka",
    "L1Model", "audit_L_axiom", "audit_l1_axioms", "build_model", "evaluate", "singular_names", "upgrade_to_L",
    "oracle_valid", "t_transform",
]
