"""``qriver`` command line: continued fractions, sails, rivers and the sail/river check.

Exit codes: 0 ok (or matched), 1 mismatch between LLS window and river runs,
2 parse error, 3 domain error (form not indefinite-anisotropic).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from qriver.cfrac import cf_of_rational, cf_of_surd
from qriver.concord import DEFAULT_MIN_OVERLAP, theorem_evidence
from qriver.errors import BudgetExceeded, ClassificationError, InsufficientOverlap, OutOfDomain, ParseError
from qriver.exact import QuadraticSurd, parse_number
from qriver.forms import BinaryQuadraticForm, classify, farey_roots, require_anisotropic, slope_roots
from qriver.sail import lls_window, normalize, sail_vertices
from qriver.topograph import river, to_dot, turn_runs

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _form_dict(form: BinaryQuadraticForm) -> dict:
    return {"a": str(form.a), "h": str(form.h), "b": str(form.b)}


def _window_arg(text: str) -> tuple[int, int]:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            n = int(parts[0])
            left, right = n, n
        elif len(parts) == 2:
            left, right = int(parts[0]), int(parts[1])
        else:
            raise ValueError
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must be N or L,R: {text!r}") from None
    if left < 0 or right < 0:
        raise argparse.ArgumentTypeError("window sizes must be non-negative")
    return left, right


def _count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def sail_report(form: BinaryQuadraticForm, left: int, right: int, k: int) -> dict:
    nf = normalize(form)
    window = lls_window(form, left, right)
    return {
        "form": _form_dict(form),
        "classification": classify(form).value,
        "reduced_form": _form_dict(nf.reduced),
        "map": nf.map.rows(),
        "alpha": str(nf.alpha),
        "beta": str(nf.beta),
        "lls_window": window.to_dict(),
        "sail": sail_vertices(form, k).to_dict(),
        "sail_reduced": sail_vertices(form, k, frame="reduced").to_dict(),
    }


def analysis_report(form: BinaryQuadraticForm, window: int = 8, steps: int = 24) -> dict:
    """Everything the library knows about one form, as plain JSON data."""
    require_anisotropic(form)
    nf = normalize(form)
    evidence = theorem_evidence(form, window)
    path = river(form, steps)
    alpha, beta = slope_roots(form)
    fa, fb = farey_roots(form)
    return {
        "form": _form_dict(form),
        "discriminant": str(form.discriminant),
        "classification": classify(form).value,
        "slope_roots": [str(alpha), str(beta)],
        "farey_roots": [str(fa), str(fb)],
        "reduced_form": _form_dict(nf.reduced),
        "map": nf.map.rows(),
        "lls_window": evidence.lls.to_dict(),
        "river": {"turns": path.turns, "runs": turn_runs(path.turns)},
        "theorem": evidence.report.to_dict(),
    }


def cmd_cf(args) -> int:
    value = parse_number(args.value)
    if isinstance(value, QuadraticSurd):
        cf = cf_of_surd(value, args.terms)
    else:
        cf = cf_of_rational(value)
    print(cf)
    return EXIT_OK


def cmd_sail(args) -> int:
    form = BinaryQuadraticForm.parse(args.form)
    left, right = args.window
    report = sail_report(form, left, right, args.vertices)
    if args.format == "json":
        print(_dump(report))
    else:
        w = report["lls_window"]
        terms = [str(t) for t in w["terms"]]
        terms.insert(w["anchor"], "|")
        print("LLS:", " ".join(terms))
        print("sail:", " ".join(f"({x},{y})" for x, y in report["sail"]["vertices"]))
    return EXIT_OK


def cmd_river(args) -> int:
    form = BinaryQuadraticForm.parse(args.form)
    path = river(form, args.steps, args.direction)
    if args.format == "dot":
        sys.stdout.write(to_dot(form, path, args.depth))
    else:
        print(_dump({"form": _form_dict(form), **path.to_dict()}))
    return EXIT_OK


def cmd_verify(args) -> int:
    form = BinaryQuadraticForm.parse(args.form)
    evidence = theorem_evidence(form, args.window, args.min_overlap)
    out = {
        "form": _form_dict(form),
        "lls_window": evidence.lls.to_dict(),
        "runs": evidence.runs,
        **evidence.report.to_dict(),
    }
    print(_dump(out))
    return EXIT_OK if evidence.report.matched else EXIT_MISMATCH


def cmd_analyze(args) -> int:
    form = BinaryQuadraticForm.parse(args.form)
    print(_dump(analysis_report(form, args.window, args.steps)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qriver", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cf", help="continued fraction of a rational or (p+sqrt(d))/q")
    p.add_argument("value")
    p.add_argument("--terms", type=_count, default=None, help="period-search budget (default QRIVER_MAX_TERMS)")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("sail", help="LLS window and sail vertices of a form a,h,b")
    p.add_argument("form")
    p.add_argument("--window", type=_window_arg, default=(4, 4), help="N or L,R terms around a0")
    p.add_argument("--vertices", type=_count, default=3, help="sail vertices on each side of the corner")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.set_defaults(func=cmd_sail)

    p = sub.add_parser("river", help="Conway river of a form a,h,b")
    p.add_argument("form")
    p.add_argument("--steps", type=_count, default=12)
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--depth", type=_count, default=6, help="DOT: superbase layers drawn around the river")
    p.set_defaults(func=cmd_river)

    p = sub.add_parser("verify", help="match the LLS window against the river's turn runs")
    p.add_argument("form")
    p.add_argument("--window", type=_count, default=8)
    p.add_argument("--min-overlap", type=_count, default=DEFAULT_MIN_OVERLAP)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("analyze", help="full JSON report for a form")
    p.add_argument("form")
    p.add_argument("--window", type=_count, default=8)
    p.add_argument("--steps", type=_count, default=24)
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"qriver: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ClassificationError, OutOfDomain, BudgetExceeded, InsufficientOverlap) as exc:
        print(f"qriver: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
