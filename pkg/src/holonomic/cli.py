"""Command-line front end.

Subcommands mirror the library pipeline: ``annihilator`` builds an ideal
from a closed form, ``gb`` from operator text, ``reduce`` prints a normal
form (exit 0 iff zero), ``ct`` runs creative telescoping with a chosen
algorithm, ``find-relation`` searches an ideal for operators avoiding given
symbols, ``closure`` applies the D-finite closure operations to ideal
files, and ``verify`` runs the oracle over a sample grid.

Exit codes are a stable contract for scripting:
    0 success, 1 usage or parse error, 2 computation cap exceeded,
    3 verification failure (nonzero normal form, failing oracle check,
    or a failed certificate identity).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .annihilator import NotHolonomicError, annihilator
from .closure import (NotDFiniteError, apply_operator, dfinite_plus,
                      dfinite_times, rank, substitute_algebraic,
                      substitute_integer_linear)
from .config import Caps, CapExceeded, DEFAULT_CAPS
from .expressions import (Call, ParseError, QUANTIFIERS, parse, parse_algebra,
                          parse_operator)
from .groebner import GroebnerBasis, buchberger
from .oracle import SampleGrid, check_annihilator
from .ratfun import RationalFunction
from .telescoping import (DeltaSpec, DeltaVar, TelescopingResult,
                          assemble_boundary, ct_heuristic, ct_slow,
                          ct_takayama, find_relation, restrict_algebra)

USAGE_ERROR, CAP_ERROR, VERIFY_ERROR = 1, 2, 3


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return USAGE_ERROR
    try:
        return args.func(args)
    except (ParseError, NotHolonomicError, NotDFiniteError, ValueError) as exc:
        print(json.dumps({"error": "usage", "reason": str(exc)}), file=sys.stderr)
        return USAGE_ERROR
    except CapExceeded as exc:
        print(json.dumps({"error": "cap-exceeded", "reason": str(exc)}), file=sys.stderr)
        return CAP_ERROR


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holonomic",
                                description="Ore operator ideals and creative telescoping")
    p.add_argument("--config", help="caps configuration file (key = value lines)")
    sub = p.add_subparsers(dest="command")

    a = sub.add_parser("annihilator", help="annihilating ideal of a closed form")
    a.add_argument("--expr", required=True)
    _algebra_flags(a)
    a.add_argument("--json", dest="json_out", help="write the ideal as JSON here")
    a.set_defaults(func=_cmd_annihilator)

    g = sub.add_parser("gb", help="Groebner basis of operators given as text")
    g.add_argument("--ops", help="operators separated by ';'")
    g.add_argument("--ops-file", help="file with one operator per line")
    _algebra_flags(g)
    g.add_argument("--json", dest="json_out")
    g.set_defaults(func=_cmd_gb)

    r = sub.add_parser("reduce", help="normal form modulo an ideal (exit 0 iff zero)")
    r.add_argument("--op", required=True)
    r.add_argument("--ideal", required=True, help="ideal JSON file")
    r.set_defaults(func=_cmd_reduce)

    c = sub.add_parser("ct", help="creative telescoping")
    c.add_argument("--algo", choices=("slow", "takayama", "heuristic"), default="heuristic")
    c.add_argument("--expr", help="summand/integrand (may be a sum(...)/integral(...) pipeline)")
    c.add_argument("--ideal", help="input ideal JSON file (alternative to --expr)")
    c.add_argument("--deltas", help="telescoping operators, e.g. 'S[k]-1' or 'Der[x]'")
    c.add_argument("--target", help="surviving generators, e.g. 'S[n],Der[y]'")
    c.add_argument("--natural", action="store_true",
                   help="declare natural boundaries (assume brackets vanish)")
    _algebra_flags(c)
    c.add_argument("--json", dest="json_out")
    c.set_defaults(func=_cmd_ct)

    f = sub.add_parser("find-relation", help="ideal elements avoiding given symbols")
    f.add_argument("--ideal", required=True)
    f.add_argument("--eliminate", default="", help="comma-separated symbols")
    f.add_argument("--json", dest="json_out")
    f.set_defaults(func=_cmd_find_relation)

    cl = sub.add_parser("closure", help="closure operations on ideal files")
    cl.add_argument("--op", required=True,
                    choices=("plus", "times", "apply", "subst-alg", "subst-int"))
    cl.add_argument("--ideal", required=True)
    cl.add_argument("--ideal2", help="second ideal (plus/times)")
    cl.add_argument("--operator", help="operator text (apply)")
    cl.add_argument("--var", help="substituted variable (subst-*)")
    cl.add_argument("--value", help="replacement expression (subst-*)")
    cl.add_argument("--target-algebra", help="target algebra declaration (subst-*)")
    cl.add_argument("--params", default="")
    cl.add_argument("--vars", dest="extra_vars", default="")
    cl.add_argument("--json", dest="json_out")
    cl.set_defaults(func=_cmd_closure)

    v = sub.add_parser("verify", help="oracle check of an ideal against an expression")
    v.add_argument("--ideal", required=True)
    v.add_argument("--expr", required=True)
    v.add_argument("--grid", required=True,
                   help="e.g. 'n=0..5;a=1,2,3;x=1/2,2' (ranges inclusive)")
    v.add_argument("--json", dest="json_out")
    v.set_defaults(func=_cmd_verify)
    return p


def _algebra_flags(sp):
    sp.add_argument("--algebra", help="generator declaration, e.g. 'S[n],S[a],Der[x]'")
    sp.add_argument("--params", default="", help="comma-separated parameters")
    sp.add_argument("--vars", dest="extra_vars", default="",
                    help="extra coefficient variables not tied to a generator")


def _caps(args) -> Caps:
    if getattr(args, "config", None):
        return Caps.from_file(args.config)
    return DEFAULT_CAPS


def _split_csv(text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()]


def _algebra_from(args):
    if not args.algebra:
        raise ValueError("--algebra is required")
    return parse_algebra(args.algebra, params=_split_csv(args.params),
                         extra_vars=_split_csv(args.extra_vars))


def _load_ideal(path: str) -> GroebnerBasis:
    return GroebnerBasis.loads(Path(path).read_text())


def _emit(payload: dict, json_out: str | None):
    text = json.dumps(payload, indent=2)
    if json_out:
        Path(json_out).write_text(text + "\n")
    print(text)


# ----------------------------------------------------------------- commands


def _cmd_annihilator(args) -> int:
    algebra = _algebra_from(args)
    gb = annihilator(args.expr, algebra, _caps(args))
    _emit(gb.to_json(), args.json_out)
    return 0


def _cmd_gb(args) -> int:
    algebra = _algebra_from(args)
    texts = []
    if args.ops:
        texts += [t for t in args.ops.split(";") if t.strip()]
    if args.ops_file:
        texts += [line for line in Path(args.ops_file).read_text().splitlines() if line.strip()]
    if not texts:
        raise ValueError("no operators given (--ops or --ops-file)")
    ops = [parse_operator(t, algebra) for t in texts]
    gb = buchberger(ops, caps=_caps(args))
    _emit(gb.to_json(), args.json_out)
    return 0


def _cmd_reduce(args) -> int:
    gb = _load_ideal(args.ideal)
    op = parse_operator(args.op, gb.algebra)
    nf = gb.reduce(op)
    print(str(nf))
    return 0 if nf.is_zero() else VERIFY_ERROR


def _cmd_ct(args) -> int:
    caps = _caps(args)
    bounds: dict = {}
    if args.ideal:
        ideal = _load_ideal(args.ideal)
        algebra = ideal.algebra
        core = None
    elif args.expr:
        core_ast, quantifiers = _peel_quantifiers(parse(args.expr))
        algebra = _algebra_from(args)
        ideal = annihilator(core_ast, algebra, caps)
        core = core_ast
        for kind, var, lo, hi in quantifiers:
            bounds[var] = (lo, hi)
        if quantifiers and not args.deltas:
            stages = _iterated(ideal, quantifiers, args.algo, caps, args.natural, bounds)
            payload = {"stages": stages[0], "result": stages[1]}
            _emit(payload, args.json_out)
            return 0 if stages[2] else VERIFY_ERROR
    else:
        raise ValueError("need --expr or --ideal")
    if not args.deltas:
        raise ValueError("--deltas is required when the expression has no quantifier")
    spec = DeltaSpec.parse(args.deltas, algebra)
    result = _run_ct(args.algo, ideal, spec, args.target, caps)
    ok = result.verified is not False
    payload = result.to_json()
    payload["telescoper_ideal"] = [str(g) for g in result.telescoper_basis(caps)]
    if args.natural or bounds:
        boundary = assemble_boundary(result, bounds, natural=args.natural)
        payload["boundary"] = boundary.to_json()
    _emit(payload, args.json_out)
    return 0 if ok else VERIFY_ERROR


def _run_ct(algo: str, ideal: GroebnerBasis, spec: DeltaSpec, target, caps) -> TelescopingResult:
    if algo == "slow":
        return ct_slow(ideal, spec, caps)
    if algo == "takayama":
        return ct_takayama(ideal, spec, caps)
    target_vars = None
    if target:
        target_algebra = parse_algebra(target)
        target_vars = [g.var for g in target_algebra.gens]
    return ct_heuristic(ideal, spec, target_vars, caps)


def _iterated(ideal: GroebnerBasis, quantifiers, algo, caps, natural, bounds):
    """Inner-to-outer telescoping for nested quantifiers; returns JSON parts."""
    stages = []
    ok = True
    current = ideal
    for kind, var, lo, hi in quantifiers:
        spec = DeltaSpec.for_algebra(current.algebra, [var])
        result = _run_ct(algo, current, spec, None, caps)
        ok = ok and result.verified is not False
        stage = result.to_json()
        boundary = assemble_boundary(result, {var: (lo, hi)}, natural=natural)
        stage["boundary"] = boundary.to_json()
        stages.append(stage)
        current = result.telescoper_basis(caps)
    return stages, current.to_json(), ok


def _peel_quantifiers(node):
    """Unwrap nested sum/integral nodes; innermost quantifier first."""
    quantifiers = []

    def peel(n):
        if isinstance(n, Call) and n.name in QUANTIFIERS and len(n.args) == 4:
            body = peel(n.args[0])
            kind = "sum" if n.name == "sum" else "integral"
            var = n.args[1].name
            quantifiers.append((kind, var, n.args[2], n.args[3]))
            return body
        return n

    core = peel(node)
    return core, quantifiers


def _cmd_find_relation(args) -> int:
    gb = _load_ideal(args.ideal)
    rels = find_relation(gb, _split_csv(args.eliminate), _caps(args))
    _emit({"relations": [str(r) for r in rels]}, args.json_out)
    return 0


def _cmd_closure(args) -> int:
    caps = _caps(args)
    gb = _load_ideal(args.ideal)
    if args.op in ("plus", "times"):
        if not args.ideal2:
            raise ValueError("--ideal2 is required for plus/times")
        other = _load_ideal(args.ideal2)
        out = dfinite_plus(gb, other, caps) if args.op == "plus" else dfinite_times(gb, other, caps)
    elif args.op == "apply":
        if not args.operator:
            raise ValueError("--operator is required for apply")
        out = apply_operator(parse_operator(args.operator, gb.algebra), gb, caps)
    elif args.op == "subst-alg":
        target = parse_algebra(args.target_algebra, params=_split_csv(args.params),
                               extra_vars=_split_csv(args.extra_vars))
        value_ast = parse(args.value)
        from .annihilator import _ast_to_ratfun
        value = _ast_to_ratfun(value_ast, target.ctx)
        out = substitute_algebraic(gb, args.var, value, target, caps)
    else:  # subst-int
        target = parse_algebra(args.target_algebra, params=_split_csv(args.params),
                               extra_vars=_split_csv(args.extra_vars))
        coeffs, const = _integer_linear(parse(args.value), target)
        out = substitute_integer_linear(gb, args.var, coeffs, const, target, caps)
    _emit(out.to_json(), args.json_out)
    return 0


def _integer_linear(node, target) -> tuple:
    from .annihilator import _ast_to_ratfun
    value = _ast_to_ratfun(node, target.ctx)
    if not value.is_polynomial():
        raise ValueError("integer-linear replacement must be polynomial")
    coeffs = {}
    const = 0
    for e, c in value.num.terms.items():
        if Fraction(c).denominator != 1:
            raise ValueError("non-integer coefficient in integer-linear replacement")
        deg = sum(e)
        if deg == 0:
            const = int(c)
        elif deg == 1:
            i = next(i for i, d in enumerate(e) if d)
            coeffs[target.ctx.names[i]] = int(c)
        else:
            raise ValueError("replacement is not linear")
    scale = Fraction(value.den.constant_value())
    if scale != 1:
        raise ValueError("non-integer coefficient in integer-linear replacement")
    return coeffs, const


def _cmd_verify(args) -> int:
    gb = _load_ideal(args.ideal)
    grid = _parse_grid(args.grid)
    report = check_annihilator(gb.elements, args.expr, grid)
    payload = {"checked": report.checked, "failures": report.to_json(),
               "skipped": [{"point": {k: str(v) for k, v in s["point"].items()},
                            "reason": s["reason"]} for s in report.skipped]}
    _emit(payload, args.json_out)
    return 0 if report.ok else VERIFY_ERROR


def _parse_grid(text: str) -> SampleGrid:
    ranges = {}
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        name, _, values = part.partition("=")
        name = name.strip()
        values = values.strip()
        if ".." in values:
            lo, _, hi = values.partition("..")
            ranges[name] = [Fraction(int(lo)) + i for i in range(int(hi) - int(lo) + 1)]
        else:
            ranges[name] = [Fraction(v) for v in values.split(",")]
    return SampleGrid.product(ranges)


if __name__ == "__main__":
    sys.exit(main())
