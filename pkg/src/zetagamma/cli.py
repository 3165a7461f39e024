"""Batch command-line front end.

Every operation is exposed as a subcommand with stable text output and an
optional --json document (schema id zetagamma/1).  Exit codes: 0 success,
2 usage error, 3 rejected query (a hypothesis check failed), 4 internal
inconsistency.  All errors go to stderr as a single machine-parsable line
`error:<kind>: <message>`.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import dirichlet
from .errors import (
    InternalInconsistencyError,
    InvalidInputError,
    RejectedQueryError,
    ZetaGammaError,
)
from .gamma import canonicalize, format_gamma, format_poly, parse_gamma
from .lattice import mult_independent
from .probe import RelationQuery, probe_point
from .verdicts import (
    SCHEMA_ID,
    AssumptionSet,
    Prop5Query,
    Prop6Query,
    Prop7Query,
    bound_certificate_to_dict,
    check_prop3,
    classify_point,
    closure_check,
    exceptional_representant,
    exceptional_set,
    report_from_dict,
    report_to_dict,
    schanuel_bound,
    verdict_to_dict,
)

_CONDITION_LABEL = {
    "unconditional": "Unconditional",
    "schanuel": "Schanuel",
    "conjecture1": "Conjecture1",
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _emit_json(doc: dict, out) -> None:
    print(json.dumps(doc, indent=2), file=out)


def _parse_function(spec: str, n: int) -> dirichlet.ArithFunction:
    if spec == "eps":
        return dirichlet.epsilon(n)
    if spec.startswith("zeta:"):
        return dirichlet.zeta_k(int(spec.split(":", 1)[1]), n)
    raise InvalidInputError(f"unknown function spec {spec!r} (want zeta:<k> or eps)")


def _assumptions(args) -> AssumptionSet:
    return AssumptionSet(
        assume_schanuel=args.assume_schanuel,
        assume_conjecture1=args.assume_conjecture1,
    )


def _add_assumption_flags(p) -> None:
    p.add_argument("--assume-schanuel", action="store_true")
    p.add_argument("--assume-conjecture1", action="store_true")


# ---------------------------------------------------------------------------
# Subcommand handlers.


def _cmd_convolve(args, out) -> int:
    f = _parse_function(args.f, args.N)
    g = _parse_function(args.g, args.N)
    h = dirichlet.convolve(f, g)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA_ID,
                "op": "convolve",
                "f": args.f,
                "g": args.g,
                "N": args.N,
                "values": [_fraction_str(v) for v in h.values],
            },
            out,
        )
        return 0
    for n in range(1, args.N + 1):
        print(f"{n}\t{_fraction_str(h(n))}", file=out)
    return 0


def _monomial_text(exponents) -> str:
    if not any(exponents):
        return "eps"
    parts = []
    for j, e in enumerate(exponents):
        if e == 1:
            parts.append(f"zeta_{j}")
        elif e > 1:
            parts.append(f"zeta_{j}^{{*{e}}}")
    return "*".join(parts)


def _relation_text(rel: dirichlet.PolynomialRelation) -> str:
    parts = []
    for exponents, coeff in rel.terms.items():
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = _monomial_text(exponents)
        if mag != 1:
            body = f"{_fraction_str(mag)}*{body}"
        parts.append(f"{sign} {body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def _cmd_carlitz(args, out) -> int:
    relations = dirichlet.carlitz_kernel(args.r, args.max_deg, args.N)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA_ID,
                "op": "carlitz",
                "r": args.r,
                "max_deg": args.max_deg,
                "N": args.N,
                "monomials": dirichlet.monomial_count(args.r, args.max_deg),
                "relations": [
                    [
                        {"exponents": list(e), "coeff": _fraction_str(c)}
                        for e, c in rel.terms.items()
                    ]
                    for rel in relations
                ],
            },
            out,
        )
        return 0
    count = dirichlet.monomial_count(args.r, args.max_deg)
    if not relations:
        print(
            f"no relation among the {count} monomials survives truncation N={args.N}",
            file=out,
        )
        return 0
    print(f"kernel dimension {len(relations)} at truncation N={args.N}:", file=out)
    for rel in relations:
        note = "   [involves eps]" if rel.involves_identity() else ""
        print(f"  {_relation_text(rel)} = 0{note}", file=out)
    return 0


def _cmd_multdep(args, out) -> int:
    res = mult_independent(args.ns)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA_ID,
                "op": "multdep",
                "ns": list(args.ns),
                "independent": res.independent,
                "certificate": list(res.certificate.exponents) if res.certificate else None,
                "primes": list(res.matrix.primes),
            },
            out,
        )
        return 0
    if res.independent:
        print("independent", file=out)
    else:
        cert = ",".join(str(a) for a in res.certificate.exponents)
        print(f"dependent certificate=({cert})", file=out)
    return 0


def _cmd_canonicalize(args, out) -> int:
    g = parse_gamma(args.gamma)
    c = canonicalize(g)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA_ID,
                "op": "canonicalize",
                "input": args.gamma,
                "canonical": format_gamma(c.canonical),
                "scale": _fraction_str(c.scale),
            },
            out,
        )
        return 0
    print(f"canonical={format_gamma(c.canonical)} scale={_fraction_str(c.scale)}", file=out)
    return 0


def _witness_text(w) -> str:
    if w is None:
        return "none"
    parts = []
    if w.pair is not None:
        parts.append(f"pair=({w.pair[0]},{w.pair[1]})")
    if w.value is not None:
        parts.append(f"value={_fraction_str(w.value)}")
    if w.min_poly is not None:
        parts.append(f"min_poly={format_poly(w.min_poly)}")
    return " ".join(parts)


def _cmd_classify(args, out) -> int:
    c = canonicalize(parse_gamma(args.gamma))
    v = classify_point(c, args.n, _assumptions(args))
    if args.json:
        doc = {
            "schema": SCHEMA_ID,
            "op": "classify",
            "gamma": {
                "input": args.gamma,
                "canonical": format_gamma(c.canonical),
                "scale": _fraction_str(c.scale),
            },
        }
        doc.update(verdict_to_dict(args.n, v))
        _emit_json(doc, out)
        return 0
    print(
        f"n={args.n} status={v.status.value} rule={v.rule} "
        f"condition={_CONDITION_LABEL[v.condition.value]} witness={_witness_text(v.witness)}",
        file=out,
    )
    return 0


def _report_for(args):
    c = canonicalize(parse_gamma(args.gamma))
    return exceptional_set(c, args.N, _assumptions(args))


def _cmd_exceptional_set(args, out) -> int:
    report = _report_for(args)
    if args.json:
        _emit_json(report_to_dict(report), out)
        return 0
    print(
        f"gamma={format_gamma(report.gamma.canonical)} scale="
        f"{_fraction_str(report.gamma.scale)} N={report.bound}",
        file=out,
    )
    alg = report.algebraic_set()
    statuses = [v.status.value for v in report.verdicts.values()]
    print(f"algebraic ({len(alg)}): {' '.join(map(str, alg))}", file=out)
    print(f"transcendental: {statuses.count('transcendental')}", file=out)
    print(f"unknown: {statuses.count('unknown')}", file=out)
    if report.representant is None:
        print("representant: none (gamma is rational)", file=out)
    else:
        print(
            f"representant: B={report.representant.value} "
            f"provenance={report.representant.provenance.value}",
            file=out,
        )
    return 0


def _cmd_representant(args, out) -> int:
    report = _report_for(args)
    rep = exceptional_representant(report)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA_ID,
                "op": "representant",
                "N": args.N,
                "B": rep.value,
                "provenance": rep.provenance.value,
            },
            out,
        )
        return 0
    print(f"B={rep.value} provenance={rep.provenance.value}", file=out)
    return 0


def _cmd_check(args, out) -> int:
    if args.report:
        with open(args.report, "r", encoding="utf-8") as fh:
            report = report_from_dict(json.load(fh))
    elif args.gamma and args.N:
        report = _report_for(args)
    else:
        raise InvalidInputError("check needs either --report FILE or --gamma and --N")
    closure = closure_check(report)
    prop3 = check_prop3(report)
    ok = not closure and prop3 is None
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA_ID,
                "op": "check",
                "closure_violations": [
                    {"rule": v.rule, "points": list(v.points)} for v in closure
                ],
                "prop3_violation": list(prop3) if prop3 else None,
                "ok": ok,
            },
            out,
        )
    else:
        print(f"closure={'ok' if not closure else 'violated'}", file=out)
        for v in closure:
            print(f"  closure violation {v.rule} at {v.points}", file=out)
        print(f"prop3={'ok' if prop3 is None else 'violated'}", file=out)
        if prop3:
            print(f"  independent triple {prop3} is entirely algebraic", file=out)
    return 0 if ok else 4


def _cmd_bound(args, out) -> int:
    if args.rule == "prop5":
        if args.n is None or not args.gammas:
            raise InvalidInputError("bound prop5 needs --n and at least one --gammas")
        query = Prop5Query(args.n, tuple(parse_gamma(t) for t in args.gammas))
    elif args.rule == "prop6":
        if not args.gamma or not args.ns:
            raise InvalidInputError("bound prop6 needs --gamma and --ns")
        query = Prop6Query(canonicalize(parse_gamma(args.gamma)), tuple(args.ns))
    else:
        if args.n is None or not args.gammas:
            raise InvalidInputError("bound prop7 needs --n and at least one --gammas")
        query = Prop7Query(args.n, tuple(parse_gamma(t) for t in args.gammas))
    cert = schanuel_bound(query)
    if args.json:
        _emit_json(bound_certificate_to_dict(cert), out)
        return 0
    print(f"bound={cert.bound} condition={_CONDITION_LABEL[cert.condition.value]}", file=out)
    for c in cert.hypothesis_checks:
        print(f"  check {c.name}: {'passed' if c.passed else 'failed'} ({c.method})", file=out)
    return 0


def _cmd_probe(args, out) -> int:
    g = parse_gamma(args.gamma)
    q = RelationQuery(args.degree, args.height, args.digits)
    outcome = probe_point(args.n, g, q)
    if args.json:
        _emit_json(
            {
                "schema": SCHEMA_ID,
                "op": "probe",
                "gamma": args.gamma,
                "n": args.n,
                "degree": args.degree,
                "height": args.height,
                "digits": args.digits,
                "outcome": outcome.kind,
                "verdict_status": outcome.verdict_status,
                "polynomial": list(outcome.polynomial) if outcome.polynomial else None,
                "detail": outcome.detail,
            },
            out,
        )
        return 0
    line = f"outcome={outcome.kind}"
    if outcome.polynomial is not None:
        line += f" polynomial={format_poly(outcome.polynomial)}"
    if outcome.detail:
        line += f" detail={outcome.detail!r}"
    print(line, file=out)
    return 0


# ---------------------------------------------------------------------------
# Parser assembly.


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="zetagamma",
        description="Exact arithmetic for power-map exceptional sets: Dirichlet ring, "
        "multiplicative-independence certificates, transcendence verdicts, and an "
        "LLL integer-relation probe.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convolve", help="Dirichlet convolution of two functions on 1..N")
    p.add_argument("f", help="function spec: zeta:<k> or eps")
    p.add_argument("g", help="function spec: zeta:<k> or eps")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_convolve)

    p = sub.add_parser(
        "carlitz",
        help="search for convolution-polynomial relations among zeta_0..zeta_r on 1..N",
        epilog="The search evaluates binomial(r+1+max-deg, max-deg) monomials "
        "(all total degrees <= max-deg, constant monomial eps included); "
        "that count grows quickly, so pick r/max-deg with care.",
    )
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--max-deg", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_carlitz)

    p = sub.add_parser("multdep", help="multiplicative independence with exact certificate")
    p.add_argument("ns", type=int, nargs="+")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_multdep)

    p = sub.add_parser("canonicalize", help="canonical form and scale of a gamma")
    p.add_argument("--gamma", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_canonicalize)

    p = sub.add_parser("classify", help="three-valued verdict for n^gamma")
    p.add_argument("--gamma", required=True)
    p.add_argument("--n", type=int, required=True)
    _add_assumption_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("exceptional-set", help="classify 1..N and extract the representant")
    p.add_argument("--gamma", required=True)
    p.add_argument("--N", type=int, required=True)
    _add_assumption_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_exceptional_set)

    p = sub.add_parser("representant", help="exceptional representant B of a report")
    p.add_argument("--gamma", required=True)
    p.add_argument("--N", type=int, required=True)
    _add_assumption_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_representant)

    p = sub.add_parser("check", help="closure and triple-dependence checks on a report")
    p.add_argument("--gamma")
    p.add_argument("--N", type=int)
    _add_assumption_flags(p)
    p.add_argument("--report", help="path to a JSON report instead of computing one")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("bound", help="Schanuel-conditional transcendence-degree bounds")
    p.add_argument("rule", choices=["prop5", "prop6", "prop7"])
    p.add_argument("--gamma", help="gamma for prop6")
    p.add_argument(
        "--gammas",
        action="append",
        default=[],
        help="repeatable gamma for prop5/prop7",
    )
    p.add_argument("--n", type=int, help="base point for prop5/prop7")
    p.add_argument(
        "--ns",
        type=lambda s: [int(x) for x in s.split(",")],
        help="comma-separated naturals for prop6",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_bound)

    p = sub.add_parser("probe", help="cross-check a verdict with the integer-relation probe")
    p.add_argument("--gamma", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--digits", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_probe)

    return parser


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args, out)
    except _UsageError as exc:
        print(f"error:usage: {exc}", file=err)
        return 2
    except RejectedQueryError as exc:
        print(f"error:rejected-query: {exc}", file=err)
        return 3
    except InternalInconsistencyError as exc:
        print(f"error:internal-inconsistency: {exc}", file=err)
        return 4
    except InvalidInputError as exc:
        print(f"error:usage: {exc}", file=err)
        return 2
    except ZetaGammaError as exc:
        print(f"error:usage: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"error:usage: {exc}", file=err)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
