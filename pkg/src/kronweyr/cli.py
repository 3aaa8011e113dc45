"""Command line interface.

Every subcommand reads JSON (a path, or ``-`` for stdin) and writes JSON to
stdout or ``--output``.  Exit codes: 0 success, 2 bad input, 3 unresolved
eigenvalues, 4 internal invariant violation.  Errors are reported on stderr
as ``{"error": ..., "code": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import KronWeyrError, UnresolvedEigenvalues
from .pencil import (
    build_kronecker,
    invariants_from_weyr,
    pencil_structure,
    pencil_weyr,
)
from .perturb import check_representation_transfer, perturbation_bound_report, run_perturbation_trials
from .poly import smith_normal_form
from .relation import kernel_rep, range_rep
from .scalars import parse_scalar
from .serialize import (
    invariants_from_json,
    invariants_to_json,
    pencil_from_json,
    pencil_to_json,
    pencil_weyr_to_json,
    poly_to_json,
    polymatrix_from_json,
    relation_from_json,
    weyr_to_json,
)
from .weyr import strictly_equivalent_relations, weyr_characteristic

DEGREE_WARNING = 64


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _extra(args) -> list:
    return [parse_scalar(x) for x in (args.extra_eig or [])]


def _relation(doc: dict, of: str | None):
    if "basis" in doc:
        return relation_from_json(doc)
    P = pencil_from_json(doc)
    return kernel_rep(P.E, P.F) if of == "kernel" else range_rep(P.E, P.F)


def cmd_weyr_relation(args) -> dict:
    S = _relation(_load(args.input), args.of)
    return weyr_to_json(weyr_characteristic(S, _extra(args)))


def cmd_weyr_pencil(args) -> dict:
    P = pencil_from_json(_load(args.input))
    pw = pencil_weyr(P, _extra(args), args.representation)
    return {
        "representation": args.representation,
        "pencil_weyr": pencil_weyr_to_json(pw),
        "invariants": invariants_to_json(invariants_from_weyr(pw)),
    }


def cmd_build_kronecker(args) -> dict:
    return pencil_to_json(build_kronecker(invariants_from_json(_load(args.input))))


def cmd_equiv(args) -> dict:
    a, b = _load(args.first), _load(args.second)
    if "basis" in a or "basis" in b:
        S1, S2 = relation_from_json(a), relation_from_json(b)
        if S1.m != S2.m:
            return {"equivalent": False, "reason": "relations live in spaces of different dimension"}
        eq = strictly_equivalent_relations(S1, S2, _extra(args))
        return {"equivalent": eq, "reason": "Weyr characteristics " + ("coincide" if eq else "differ")}
    P, Q = pencil_from_json(a), pencil_from_json(b)
    if P.shape != Q.shape:
        return {"equivalent": False, "reason": "pencil sizes differ"}
    sp, sq = pencil_structure(P), pencil_structure(Q)
    for name in ("finite_factors", "alpha", "beta", "gamma"):
        if getattr(sp, name) != getattr(sq, name):
            label = "finite elementary divisors" if name == "finite_factors" else name
            return {"equivalent": False, "reason": f"{label} differ"}
    return {"equivalent": True, "reason": "all Kronecker invariants coincide"}


def cmd_perturb(args) -> dict:
    if args.trials is not None:
        return run_perturbation_trials(args.trials, args.max_size, args.seed, args.verbose)
    if not args.pencils or len(args.pencils) != 2:
        raise ValueError("give two pencil files, or --trials")
    P, Q = (pencil_from_json(_load(p)) for p in args.pencils)
    report = perturbation_bound_report(P, Q, _extra(args)).to_json()
    report["transfer"] = check_representation_transfer(P, Q)
    return report


def cmd_smith(args) -> dict:
    doc = _load(args.input)
    M = pencil_from_json(doc).poly() if "E" in doc else polymatrix_from_json(doc)
    if M.max_degree() > DEGREE_WARNING:
        print(f"warning: degree {M.max_degree()} exceeds {DEGREE_WARNING}; root search may be slow",
              file=sys.stderr)
    _, factors = smith_normal_form(M)
    return {"invariant_factors": [poly_to_json(f) for f in factors]}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": message, "code": 2}), file=sys.stderr)
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kronweyr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, extra=True):
        p.add_argument("--output", "-o", help="write JSON here instead of stdout")
        if extra:
            p.add_argument("--extra-eig", action="append", metavar="SCALAR",
                           help="eigenvalue to try besides the rational roots (repeatable)")

    p = sub.add_parser("weyr-relation", help="Weyr characteristic of a linear relation")
    p.add_argument("input")
    p.add_argument("--of", choices=["kernel", "range"], default="kernel",
                   help="representation to use when the input is a pencil")
    common(p)
    p.set_defaults(func=cmd_weyr_relation)

    p = sub.add_parser("weyr-pencil", help="pencil Weyr characteristic and Kronecker invariants")
    p.add_argument("input")
    p.add_argument("--representation", choices=["kernel", "range", "both"], default="both")
    common(p)
    p.set_defaults(func=cmd_weyr_pencil)

    p = sub.add_parser("build-kronecker", help="pencil in Kronecker form from invariants")
    p.add_argument("input")
    common(p, extra=False)
    p.set_defaults(func=cmd_build_kronecker)

    p = sub.add_parser("equiv", help="decide strict equivalence of two pencils or relations")
    p.add_argument("first")
    p.add_argument("second")
    common(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("perturb", help="rank-one bound report, or randomized trials")
    p.add_argument("pencils", nargs="*")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, default=12)
    p.add_argument("--verbose", action="store_true", help="include per-trial reports")
    common(p)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("smith", help="Smith invariant factors of a pencil or polynomial matrix")
    p.add_argument("input")
    common(p, extra=False)
    p.set_defaults(func=cmd_smith)
    return parser


def _fail(exc: Exception, code: int) -> int:
    print(json.dumps({"error": str(exc) or type(exc).__name__, "code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except UnresolvedEigenvalues as exc:
        print(json.dumps({"error": str(exc), "code": exc.exit_code,
                          "factors": [poly_to_json(f) for f in exc.factors]}), file=sys.stderr)
        return exc.exit_code
    except KronWeyrError as exc:
        return _fail(exc, exc.exit_code)
    except (ValueError, TypeError, KeyError, OSError, json.JSONDecodeError) as exc:
        return _fail(exc, 2)
    text = json.dumps(result, indent=2) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
