"""Command line interface: ``curvesing <subcommand> ...``.

Exit status: 0 success, 1 a check or computation failed, 2 bad usage or
input, 3 an internal invariant was violated (a bug).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from gmpy2 import mpq

from . import __version__
from .corpus import bundled_corpus_text, load_corpus
from .errors import InputError, InternalInvariantError, NonIsolatedError
from .exactnum import render_rational
from .explorer import (
    DEFAULT_COEFFICIENTS,
    DEFAULT_SUPPORT,
    FamilyTemplate,
    SearchConfig,
    parse_range,
    scan_family,
    search_support,
    verify_corpus,
)
from .invariants import full_record, record_to_json, space_curve_record
from .localstd import StepBoundExceeded
from .numberfield import TowerLimitError
from .omega import omega_span, pol_report
from .polyring import Polynomial, PolynomialSyntaxError, VariableSet
from .puiseux import puiseux_branches, render_branch, semigroup_data
from .series import InsufficientPrecision

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _approx(q) -> str:
    return f"{float(q):.6g}"


def _rho_text(rec: dict, approx: bool) -> str:
    rho = rec["rho"]
    if rho is None:
        return "undefined"
    q = mpq(rho["num"], rho["den"])
    text = render_rational(q)
    return f"{text} (~{_approx(q)})" if approx else text


def _parse(text: str, variables: str) -> Polynomial:
    return Polynomial.parse(text, variables)


# -- subcommands -------------------------------------------------------------------


def _record_table(js: dict, approx: bool) -> str:
    def show(v):
        return "-" if v is None else str(v)

    rows = [
        ("input", js["input"]),
        ("mu", show(js["mu"])),
        ("tau", show(js["tau"])),
        ("tau'", show(js["tau_prime"])),
        ("m", show(js["m"])),
        ("r", show(js["r"])),
        ("delta", show(js["delta"])),
        ("lambda", show(js["lambda"])),
        ("rho", _rho_text(js, approx)),
        ("omega codim", show(js["omega_codim"])),
        ("QH", "yes" if js["quasihomogeneous"] else "no"),
    ]
    if not js["complete"]:
        rows.append(("complete", "no"))
    lines = [f"{k:<12} {v}" for k, v in rows]
    lines.append("checks")
    for c in js["checks"]:
        lines.append(f"  {c['name']}  {c['status']:<5}  {c['detail']}")
    return "\n".join(lines)


def cmd_invariants(args) -> int:
    f = _parse(args.polynomial, args.vars or "x,y")
    js = record_to_json(full_record(f, label=args.polynomial))
    if args.json:
        _emit_json(js)
    else:
        print(_record_table(js, args.approx))
    bad = [c for c in js["checks"] if c["status"] not in ("pass", "n/a")]
    return EXIT_FAIL if bad or not js["complete"] else EXIT_OK


def cmd_omega(args) -> int:
    f = _parse(args.polynomial, args.vars or "x,y")
    if f.constant_term() or f.is_zero():
        raise InputError("f must vanish at the origin")
    B = puiseux_branches(f)
    if B.r != 1:
        raise InputError(f"the germ has {B.r} branches; omega needs an irreducible germ")
    b = B[0]
    conductor, gaps = semigroup_data(b)
    rep = pol_report(f, b)
    span = omega_span(b, rep.N)
    missing = [k for k in range(rep.N + 1) if k not in span.echelon.orders()]
    js = {
        "input": args.polynomial,
        "delta": rep.delta,
        "conductor": conductor,
        "semigroup_gaps": gaps,
        "omega_codim": rep.omega_codim,
        "omega_missing_orders": missing,
        "truncation": rep.N,
        "conductor_generator_order": rep.generator_order,
        "jacobian_codim": rep.jacobian_codim,
        "pol_identity": rep.holds,
        "pol_literal_shift": rep.shift_form,
    }
    if args.json:
        _emit_json(js)
    else:
        for k, v in js.items():
            print(f"{k:<26} {v}")
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_tauprime(args) -> int:
    default = "x,y" if len(args.generators) == 1 else "x,y,z"
    variables = args.vars or default
    gens = [_parse(g, variables) for g in args.generators]
    js = space_curve_record(gens, variables, label="; ".join(args.generators))
    js["variables"] = str(VariableSet.of(variables))
    if args.json:
        _emit_json(js)
    else:
        print(f"input      {js['input']}")
        print(f"variables  {js['variables']}")
        print(f"tau'       {js['tau_prime']}")
    return EXIT_OK


def _field_json(K) -> list:
    out = []
    while K is not None and not K.is_rational:
        out.append(K.modulus_str())
        K = K.parent
    return out


def cmd_branches(args) -> int:
    f = _parse(args.polynomial, args.vars or "x,y")
    B = puiseux_branches(f, args.precision)
    items = []
    for b in B:
        bb = b.at_precision(args.precision) if b.extendable else b
        text = render_branch(bb, args.precision if bb.truncation != float("inf") else None)
        x_line = text.partition("\n")[0]
        items.append({
            "parametrization": x_line,
            "e": b.e,
            "conjugates": b.degree,
            "field": _field_json(b.field),
            "exact": b.truncation == float("inf"),
        })
    js = {"input": args.polynomial, "r": B.r, "precision": args.precision, "branches": items}
    if args.json:
        _emit_json(js)
    else:
        print(f"r = {B.r}")
        for k, it in enumerate(items, 1):
            extra = f"  ({it['conjugates']} conjugate branches)" if it["conjugates"] > 1 else ""
            print(f"[{k}] {it['parametrization']}{extra}")
            for line in it["field"]:
                print(f"    {line}")
    return EXIT_OK


def _scan_table(result, approx: bool, key_name: str) -> str:
    lines = [f"{key_name:>4}  {'mu':>5} {'tau':>5}  {'rho':<14} checks  input"]
    for e in result.entries:
        if e.record is None:
            lines.append(f"{e.key!s:>4}  error: {e.error}  {e.input}")
            continue
        r = e.record
        bad = [c["name"] for c in r["checks"] if c["status"] not in ("pass", "n/a")]
        lines.append(f"{e.key!s:>4}  {r['mu']:>5} {r['tau']:>5}  {_rho_text(r, approx):<14} "
                     f"{'ok' if not bad else ','.join(bad):<6}  {e.input}")
    return "\n".join(lines)


def _summary_lines(s: dict) -> list:
    lines = [f"max rho: {s['max_rho']}"]
    if s.get("argmax"):
        lines.append(f"argmax: {s['argmax']['input']}")
    if "strictly_increasing" in s:
        lines.append(f"rho strictly increasing: {'yes' if s['strictly_increasing'] else 'no'}")
        lines.append(f"all rho < 4/3: {'yes' if s['all_below_4_3'] else 'no'}")
    lines.append(f"check failures: {len(s['check_failures'])}, errors: {len(s['errors'])}")
    for c in s["refutation_candidates"]:
        lines.append(f"rho = {c['rho']} at {c['input']}: {c['label']}")
    return lines


def _scan_status(s: dict) -> int:
    if s["internal_errors"]:
        return EXIT_INTERNAL
    return EXIT_FAIL if s["check_failures"] or s["errors"] else EXIT_OK


def cmd_scan(args) -> int:
    values = parse_range(args.range)
    t = FamilyTemplate(args.family, tuple(values), args.param, args.vars or "x,y")
    res = scan_family(t)
    if args.json:
        _emit_json({"template": args.family, "param": args.param,
                    "records": [e.to_json(args.param) for e in res.entries],
                    "summary": res.summary})
    else:
        print(_scan_table(res, args.approx, args.param))
        print("\n".join(_summary_lines(res.summary)))
    return _scan_status(res.summary)


def _parse_support(text: str, variables: str) -> tuple:
    vs = VariableSet.of(variables)
    out = []
    for part in text.split(","):
        p = Polynomial.parse(part, vs)
        if len(p.terms) != 1:
            raise InputError(f"support entry {part!r} is not a monomial")
        out.append(next(iter(p.terms)))
    return tuple(out)


def _parse_coefficients(text: str) -> tuple:
    if ".." in text:
        return tuple(c for c in parse_range(text) if c)
    return tuple(int(c) for c in text.split(","))


def cmd_search(args) -> int:
    variables = args.vars or "x,y"
    support = _parse_support(args.support, variables) if args.support else DEFAULT_SUPPORT
    coeffs = _parse_coefficients(args.coefficients) if args.coefficients else DEFAULT_COEFFICIENTS
    config = SearchConfig(support, coeffs, args.samples, args.seed, variables)
    res = search_support(config, args.out, workers=args.workers, resume=not args.fresh)
    if args.json:
        _emit_json({"config": config.to_json(), "seed": config.seed, "out": args.out,
                    "summary": res.summary})
    else:
        print(f"samples: {len(res.entries)}  seed: {config.seed}"
              + (f"  results: {args.out}" if args.out else ""))
        print("\n".join(_summary_lines(res.summary)))
    return _scan_status(res.summary)


def cmd_verify(args) -> int:
    report = verify_corpus(args.corpus)
    if args.json:
        _emit_json(report.to_json())
    else:
        print(f"{report.to_json()['count']} items")
        for it in report.items:
            line = f"{it['status']:<5} {it['name']}"
            if it["error"]:
                line += f"  error: {it['error']}"
            for m in it["mismatches"]:
                line += f"  {m['field']}: expected {m['expected']}, computed {m['computed']}"
            if it["failed_checks"]:
                line += "  failed checks: " + ",".join(it["failed_checks"])
            print(line)
        print("all pass" if report.ok else "FAILURES")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_corpus(args) -> int:
    if args.json:
        print(bundled_corpus_text().rstrip())
        return EXIT_OK
    for it in load_corpus():
        g = it.golden
        print(f"{it.name:<16} {it.f:<36} mu={g.get('mu')} tau={g.get('tau')} r={g.get('r')}")
    return EXIT_OK


# -- entry point ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvesing",
                description="Exact invariants of plane curve singularities.",
                epilog="Environment: CURVESING_STEP_BOUND overrides the reduction step watchdog.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, vars_help="variable names, comma separated (default x,y)"):
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--vars", help=vars_help)

    sp = sub.add_parser("invariants", help="all invariants and the identity checks")
    sp.add_argument("polynomial")
    common(sp)
    sp.add_argument("--approx", action="store_true", help="annotate rho with a decimal value")
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("omega", help="forms on the normalization (irreducible germs)")
    sp.add_argument("polynomial")
    common(sp)
    sp.set_defaults(func=cmd_omega)

    sp = sub.add_parser("tauprime", help="colength of the ideal plus its Jacobian minors")
    sp.add_argument("generators", nargs="+")
    common(sp, "variable names (default x,y for one generator, x,y,z for two)")
    sp.set_defaults(func=cmd_tauprime)

    sp = sub.add_parser("branches", help="Puiseux parametrizations of the branches")
    sp.add_argument("polynomial")
    sp.add_argument("--precision", type=int, default=8, help="series order shown (default 8)")
    common(sp)
    sp.set_defaults(func=cmd_branches)

    sp = sub.add_parser("scan", help="records along a one-parameter family")
    sp.add_argument("--family", required=True, help='template such as "x^(2m+1)+y^(2m)"')
    sp.add_argument("--range", required=True, help="parameter range a..b (inclusive)")
    sp.add_argument("--param", default="m", help="parameter symbol (default m)")
    common(sp)
    sp.add_argument("--approx", action="store_true")
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("search", help="seeded random search over a Newton support")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--support", help='monomials, e.g. "x^7,y^6,x^3*y^4"')
    sp.add_argument("--coefficients", help='"-3..3" (zero skipped) or "1,2,5"')
    sp.add_argument("--out", help="JSON Lines results file (resumed if present)")
    sp.add_argument("--fresh", action="store_true", help="overwrite instead of resuming")
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", help="recompute a corpus and compare with its reference values")
    sp.add_argument("corpus", nargs="?", help="corpus JSON file (default: bundled corpus)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("corpus", help="print the bundled corpus")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_corpus)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args)
    except PolynomialSyntaxError as exc:
        print(f"curvesing: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"curvesing: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonIsolatedError, TowerLimitError, InsufficientPrecision) as exc:
        print(f"curvesing: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InternalInvariantError, StepBoundExceeded) as exc:
        print(f"curvesing: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (KeyError, ValueError) as exc:
        print(f"curvesing: input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
