"""Command line interface: ``diffgsb <command> --file F [flags]``.

Presentation files are YAML documents::

    generators: [y, x]      # ascending: y < x
    commutative: true
    weight: "0"             # rational, "p/q" allowed
    order: deglex           # or lex (commutative only)
    relations:
      - x + y + 1

Exit codes: 0 success or all compositions trivial, 1 nontrivial compositions
(or a non-member / unconverged completion), 2 invalid input or failed classical
precheck, 3 reduction budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import yaml

from .diffmon import GenTable, order_for
from .diffpoly import Context
from .expr import ParseError, format_poly, format_word, parse_poly
from .gsb import (
    Presentation,
    PrecheckError,
    Status,
    check_gsb,
    complete,
    compositions,
    diff_irr,
    lift_presentation,
    member_bounded,
    quotient_dim_oracle,
)
from .rewrite import BudgetExhausted, reduce

SCHEMA = 1

EXIT_OK, EXIT_NONTRIVIAL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _fraction_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def presentation_from_dict(doc: dict) -> Presentation:
    if not isinstance(doc, dict):
        raise InputError("presentation file must be a mapping")
    unknown = set(doc) - {"generators", "commutative", "weight", "order", "relations"}
    if unknown:
        raise InputError(f"unknown keys: {sorted(unknown)}")
    try:
        gens = doc["generators"]
    except KeyError:
        raise InputError("missing 'generators'") from None
    if isinstance(gens, str):
        gens = [g.strip() for g in gens.split(",")]
    gens = [str(g) for g in gens]
    if "d" in gens:
        raise InputError("'d' is reserved for the derivation")
    commutative = doc.get("commutative", False)
    if not isinstance(commutative, bool):
        raise InputError("'commutative' must be true or false")
    try:
        weight = Fraction(str(doc.get("weight", 0)).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"invalid weight {doc.get('weight')!r}") from None
    try:
        order = order_for(str(doc.get("order", "deglex")), commutative)
        table = GenTable(gens)
    except ValueError as e:
        raise InputError(str(e)) from None
    ctx = Context(table, commutative, weight)
    rels = doc.get("relations") or []
    if isinstance(rels, str):
        rels = [rels]
    relations = []
    for text in rels:
        try:
            relations.append(parse_poly(str(text), ctx))
        except ParseError as e:
            raise InputError(f"relation {text!r}: {e}") from None
    try:
        return Presentation(ctx, relations, order)
    except ValueError as e:
        raise InputError(str(e)) from None


def load_presentation(path) -> Presentation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from None
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise InputError(f"invalid YAML in {path}: {e}") from None
    return presentation_from_dict(doc)


def _describe(p: Presentation) -> dict:
    return {
        "generators": list(p.table.names),
        "commutative": p.commutative,
        "weight": _fraction_str(p.weight),
        "order": p.order.kind.value,
        "relations": [format_poly(r, p.order) for r in p.relations],
    }


def _word(w, p):
    return format_word(w, p.table.names)


def _poly(f, p):
    return format_poly(f, p.order)


def _trace(trace, p):
    return [
        {"rule": list(step.rule), "left": _word(step.position.left, p),
         "right": _word(step.position.right, p), "coeff": _fraction_str(step.coeff)}
        for step in trace.steps
    ]


def _report(rep, p) -> dict:
    return {
        "kind": rep.kind.value,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "i": rep.orders[0],
        "j": rep.orders[1],
        "w": _word(rep.w, p),
        "left": _word(rep.position.left, p),
        "right": _word(rep.position.right, p),
        "composition": _poly(rep.composition, p),
        "normal_form": None if rep.normal_form is None else _poly(rep.normal_form, p),
        "trivial": rep.trivial,
        "budget_exhausted": rep.exhausted,
        "steps": len(rep.certificate.steps),
    }


def _verdict(v, p) -> dict:
    return {
        "all_trivial": v.all_trivial,
        "checked": v.checked,
        "budget_exhausted": v.exhausted,
        "failures": [_report(r, p) for r in v.failures],
    }


def _parse_expr(text, p):
    try:
        return parse_poly(text, p.ctx)
    except ParseError as e:
        raise InputError(f"expression {text!r}: {e}") from None


def _lift(p, args):
    kw = {} if args.step_budget is None else {"step_budget": args.step_budget}
    try:
        return lift_presentation(p, **kw)
    except PrecheckError as e:
        raise _Precheck(e.report) from None


class _Precheck(Exception):
    def __init__(self, report):
        self.report = report


# -- commands; each returns (payload, human text, exit code) --


def cmd_derive(p, args):
    f = _parse_expr(args.expr, p)
    g = f.derive_n(args.n)
    out = _poly(g, p)
    return {"input": _poly(f, p), "n": args.n, "result": out}, out, EXIT_OK


def cmd_reduce(p, args):
    rs = _lift(p, args)
    f = _parse_expr(args.expr, p)
    nf, trace = reduce(f, rs)
    payload = {"input": _poly(f, p), "normal_form": _poly(nf, p), "trace": _trace(trace, p)}
    return payload, _poly(nf, p), EXIT_OK


def cmd_member(p, args):
    rs = _lift(p, args)
    f = _parse_expr(args.expr, p)
    res = member_bounded(f, rs)
    payload = {
        "input": _poly(f, p),
        "status": res.status.value,
        "normal_form": None if res.normal_form is None else _poly(res.normal_form, p),
        "steps": len(res.certificate.steps),
    }
    if res.status is Status.YES:
        return payload, "yes", EXIT_OK
    if res.status is Status.BUDGET_EXHAUSTED:
        return payload, "budget exhausted", EXIT_BUDGET
    return payload, f"irreducible: {payload['normal_form']}", EXIT_NONTRIVIAL


def cmd_compose(p, args):
    rs = _lift(p, args)
    n = len(rs.basis)
    if not (0 <= args.lhs < n and 0 <= args.rhs < n):
        raise InputError(f"relation indices must be in [0, {n})")
    top = max(args.i, args.j)
    picked = []
    for rep in compositions(rs, top, args.max_degree):
        if rep.orders != (args.i, args.j):
            continue
        if {rep.lhs, rep.rhs} == {args.lhs, args.rhs} and (
            (rep.lhs, rep.rhs) == (args.lhs, args.rhs) or rs.order.commutative
        ):
            picked.append(rep)
    reports = [_report(r, p) for r in picked]
    lines = [
        f"[{r['kind']}] ({r['lhs']},{r['rhs']}) i={r['i']} j={r['j']} w={r['w']}: "
        f"{r['composition']} -> {r['normal_form']} "
        f"{'trivial' if r['trivial'] else 'NONTRIVIAL'}"
        for r in reports
    ] or [f"no composition at i={args.i}, j={args.j}"]
    code = EXIT_OK
    if any(r.exhausted for r in picked):
        code = EXIT_BUDGET
    elif any(not r.trivial for r in picked):
        code = EXIT_NONTRIVIAL
    return {"compositions": reports}, "\n".join(lines), code


def cmd_check_gs(p, args):
    rs = _lift(p, args)
    v = check_gsb(rs, args.max_order, args.max_degree)
    payload = _verdict(v, p)
    lines = [f"checked {v.checked} compositions (max order {args.max_order}, "
             f"max degree {args.max_degree})"]
    for r in payload["failures"]:
        lines.append(f"  NONTRIVIAL [{r['kind']}] ({r['lhs']},{r['rhs']}) i={r['i']} j={r['j']} "
                     f"w={r['w']}: {r['composition']} -> {r['normal_form']}")
    lines.append("all compositions trivial" if v.all_trivial else
                 f"{len(v.failures)} nontrivial composition(s)")
    if v.exhausted:
        return payload, "\n".join(lines), EXIT_BUDGET
    return payload, "\n".join(lines), EXIT_OK if v.all_trivial else EXIT_NONTRIVIAL


def cmd_complete(p, args):
    rs = _lift(p, args)
    res = complete(rs, args.max_order, args.rounds, args.max_degree)
    payload = {
        "rounds": [[_poly(f, p) for f in added] for added in res.rounds],
        "basis": [_poly(f, p) for f in res.basis],
        "converged": res.converged,
        "verdict": _verdict(res.verdict, p),
    }
    lines = [f"round {k}: adjoined {', '.join(r)}" for k, r in enumerate(payload["rounds"], 1)]
    lines.append("basis: " + "; ".join(payload["basis"]))
    lines.append("converged within bounds" if res.converged else "not converged")
    if res.verdict.exhausted:
        return payload, "\n".join(lines), EXIT_BUDGET
    return payload, "\n".join(lines), EXIT_OK if res.converged else EXIT_NONTRIVIAL


def cmd_basis(p, args):
    rs = _lift(p, args)
    words = diff_irr(rs, args.max_degree, args.max_order)
    payload = {"words": [_word(w, p) for w in words], "count": len(words)}
    lines = payload["words"] + [f"count: {len(words)}"]
    if args.verify:
        b = quotient_dim_oracle(rs, args.max_degree, args.max_order)
        ok = len(words) in b
        payload["oracle"] = {"lower": b.lower, "upper": b.upper, "exact": b.exact, "agrees": ok}
        lines.append(f"oracle: [{b.lower}, {b.upper}] {'agrees' if ok else 'DISAGREES'}")
        if not ok:
            return payload, "\n".join(lines), EXIT_NONTRIVIAL
    return payload, "\n".join(lines), EXIT_OK


COMMANDS = {
    "derive": cmd_derive,
    "reduce": cmd_reduce,
    "member": cmd_member,
    "compose": cmd_compose,
    "check-gs": cmd_check_gs,
    "complete": cmd_complete,
    "basis": cmd_basis,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--file", "-f", required=True, help="presentation file (YAML)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--max-order", type=int, default=3)
    common.add_argument("--max-degree", type=int, default=6)
    common.add_argument("--step-budget", type=int, default=None,
                        help="reduction step limit (lex defaults to 200000)")

    parser = argparse.ArgumentParser(
        prog="diffgsb",
        description="Groebner-Shirshov bases for free differential algebras of weight lambda.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("derive", "reduce", "member"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--expr", "-e", required=True)
        if name == "derive":
            sp.add_argument("--n", "-n", type=int, default=1)
    sp = sub.add_parser("compose", parents=[common])
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--j", type=int, required=True)
    sp.add_argument("--lhs", type=int, default=0)
    sp.add_argument("--rhs", type=int, default=0)
    sub.add_parser("check-gs", parents=[common])
    sp = sub.add_parser("complete", parents=[common])
    sp.add_argument("--rounds", type=int, default=8)
    sp = sub.add_parser("basis", parents=[common])
    sp.add_argument("--verify", action="store_true")
    return parser


def _emit(payload: dict, as_json: bool, text: str, out) -> None:
    if as_json:
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    for flag in ("max_order", "max_degree", "n", "i", "j", "rounds", "step_budget"):
        if getattr(args, flag, 0) is not None and getattr(args, flag, 0) < 0:
            print(f"diffgsb: --{flag.replace('_', '-')} must be nonnegative", file=sys.stderr)
            return EXIT_INPUT
    base = {"schema": SCHEMA, "command": args.command,
            "bounds": {"max_order": args.max_order, "max_degree": args.max_degree}}
    if args.command == "complete":
        base["bounds"]["rounds"] = args.rounds
    try:
        p = load_presentation(args.file)
        base["presentation"] = _describe(p)
        payload, text, code = COMMANDS[args.command](p, args)
    except InputError as e:
        print(f"diffgsb: {e}", file=sys.stderr)
        return EXIT_INPUT
    except _Precheck as e:
        rep = e.report
        base["precheck"] = _report(rep, p)
        _emit({**base, "error": "classical precheck failed"}, args.json,
              "classical GS precheck failed: " + _poly(rep.composition, p), out)
        return EXIT_INPUT
    except BudgetExhausted as e:
        _emit({**base, "error": str(e)}, args.json, str(e), out)
        return EXIT_BUDGET
    _emit({**base, "result": payload, "exit_code": code}, args.json, text, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
