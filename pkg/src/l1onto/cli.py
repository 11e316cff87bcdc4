"""Command-line interface.

Exit codes: 0 provable / valid / success, 1 rejected / invalid, 2 parse error,
3 resource limit, 4 the oracle disagrees with the tableau verdict.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import model as model_mod
from .rejection import (
    CertificateError,
    check_derivation,
    derivation_from_json,
    derivation_to_json,
    reject_formula,
    reject_formula_hl1,
)
from .syntax import ParseError, parse_formula, render
from .tableau import Mode, Node, build_tableau, check_tableau, default_strategy, is_hintikka, random_strategy, verdict_to_json
from .translate import ResourceLimit, oracle_valid, render_fol, render_tptp, t_transform

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_LIMIT, EXIT_ORACLE = 0, 1, 2, 3, 4


class _Exit(Exception):
    def __init__(self, code: int, message: str = ""):
        self.code = code
        self.message = message


def _read_text(arg: Optional[str], path: Optional[str]) -> str:
    if path is not None:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    if arg is None:
        raise _Exit(EXIT_PARSE, "no formula given")
    if arg == "-":
        return sys.stdin.read()
    return arg


def _formula(args):
    text = _read_text(args.formula, args.file).strip()
    try:
        return parse_formula(text)
    except ParseError as e:
        raise _Exit(EXIT_PARSE, f"parse error: {e}") from None


def _verdict(args, f):
    strategy = default_strategy if not args.seed else random_strategy(args.seed)
    try:
        return build_tableau(f, strategy, Mode(args.mode))
    except RuntimeError as e:
        raise _Exit(EXIT_LIMIT, str(e)) from None


def _emit(args, obj, text: str) -> None:
    if args.json:
        print(json.dumps(obj, ensure_ascii=False, indent=2))
    else:
        print(text)


def _tree_lines(node: Node, indent: str = "") -> list[str]:
    tag = ""
    if node.rule is not None:
        tag = f"  [{node.rule.rule.value}]"
    elif node.leaf == "closed":
        tag = f"  [closed on {render(node.witness.formula, unicode=True)}]"
    elif node.leaf == "hintikka":
        tag = "  [open: Hintikka]"
    lines = [f"{indent}{render(node.formula, unicode=True)}{tag}"]
    for child in node.children:
        lines.extend(_tree_lines(child, indent + "  "))
    return lines


# ---------------------------------------------------------------------------
# Subcommands


def cmd_decide(args) -> int:
    f = _formula(args)
    v = _verdict(args, f)
    word = "PROVABLE" if v.provable else "REJECTED"
    out = {"formula": render(f), "verdict": v.kind}
    code = EXIT_OK if v.provable else EXIT_NO
    lines = [word]
    if args.oracle:
        try:
            valid = oracle_valid(f)
        except ResourceLimit as e:
            raise _Exit(EXIT_LIMIT, str(e)) from None
        agrees = valid == v.provable
        out["oracle"] = {"valid": valid, "agrees": agrees}
        lines.append(f"oracle: {'valid' if valid else 'invalid'} ({'agrees' if agrees else 'DISAGREES'})")
        if not agrees:
            code = EXIT_ORACLE
    _emit(args, out, "\n".join(lines))
    return code


def cmd_tableau(args) -> int:
    f = _formula(args)
    v = _verdict(args, f)
    lines = _tree_lines(v.tableau) + ["PROVABLE" if v.provable else "REJECTED"]
    _emit(args, verdict_to_json(v, Mode(args.mode)), "\n".join(lines))
    return EXIT_OK if v.provable else EXIT_NO


def cmd_reject(args) -> int:
    f = _formula(args)
    build = reject_formula_hl1 if args.system == "hl1" else reject_formula
    try:
        d = build(f)
    except ValueError as e:
        raise _Exit(EXIT_NO, str(e)) from None
    except RuntimeError as e:
        raise _Exit(EXIT_LIMIT, str(e)) from None
    print(json.dumps(derivation_to_json(d), ensure_ascii=False, indent=2))
    return EXIT_OK


def cmd_model(args) -> int:
    f = _formula(args)
    if is_hintikka(f):
        h = f
    else:
        v = _verdict(args, f)
        if v.provable:
            raise _Exit(EXIT_NO, "formula is provable; it has no countermodel")
        h = v.hintikka
    m = model_mod.build_model(h)
    out = {
        "formula": render(f),
        "hintikka": render(h),
        "model": model_mod.model_to_json(m),
        "falsifies": not model_mod.evaluate(m, f),
        "audit_l1": model_mod.audit_l1_axioms(m),
        "singular_names": [sorted(s) for s in model_mod.singular_names(m)],
    }
    if args.upgrade_L:
        u = model_mod.upgrade_to_L(m)
        out["upgraded"] = model_mod.model_to_json(u)
        out["audit_L"] = model_mod.audit_L_axiom(u)
    print(json.dumps(out, ensure_ascii=False, indent=2))
    return EXIT_OK


def cmd_translate(args) -> int:
    f = _formula(args)
    phi = t_transform(f)
    print(render_tptp(phi) if args.tptp else render_fol(phi))
    return EXIT_OK


def cmd_check(args) -> int:
    text = _read_text(args.certificate, None)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise _Exit(EXIT_NO, f"certificate is not JSON: {e}") from None
    if isinstance(data, dict) and data.get("kind") == "tableau":
        res = check_tableau(data)
        where = "/".join(map(str, res.node))
        detail = f"node [{where}]: {res.reason}"
    else:
        try:
            d = derivation_from_json(data)
        except (CertificateError, ParseError) as e:
            raise _Exit(EXIT_NO, f"malformed derivation: {e}") from None
        res = check_derivation(d)
        detail = f"step {res.index}: {res.reason}"
    if res:
        print("VALID")
        return EXIT_OK
    print(f"INVALID {detail}")
    return EXIT_NO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="l1onto", description="Decision procedure for the epsilon calculus L1.")
    sub = parser.add_subparsers(dest="command", required=True)

    def formula_cmd(name: str, help_: str, fn) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("formula", nargs="?", help="formula text, or - for stdin")
        p.add_argument("--file", help="read the formula from a file (- for stdin)")
        p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EPS3B.value)
        p.add_argument("--seed", type=int, default=0, help="randomize the rule choice (0 = default strategy)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(fn=fn)
        return p

    p = formula_cmd("decide", "print PROVABLE or REJECTED", cmd_decide)
    p.add_argument("--oracle", action="store_true", help="cross-check against the bounded semantic oracle")
    formula_cmd("tableau", "print the full tableau", cmd_tableau)
    p = formula_cmd("reject", "emit a rejection derivation as JSON", cmd_reject)
    p.add_argument("--system", choices=["har", "hl1"], default="har")
    p = formula_cmd("model", "emit a countermodel as JSON", cmd_model)
    p.add_argument("--upgrade-L", dest="upgrade_L", action="store_true", help="extend to a model of the full ontology")
    p = formula_cmd("translate", "translate into first-order logic", cmd_translate)
    p.add_argument("--tptp", action="store_true", help="TPTP FOF output")

    p = sub.add_parser("check", help="validate a tableau or rejection certificate")
    p.add_argument("certificate", help="certificate file, or - for stdin")
    p.set_defaults(fn=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.certificate != "-":
        try:
            with open(args.certificate, encoding="utf-8") as fh:
                args.certificate = fh.read()
        except OSError as e:
            print(f"l1onto: {e}", file=sys.stderr)
            return EXIT_NO
    try:
        return args.fn(args)
    except _Exit as e:
        if e.message:
            print(f"l1onto: {e.message}", file=sys.stderr)
        return e.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
