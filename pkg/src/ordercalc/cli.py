"""Command-line front end: ``ord <command> ...``.

Exit codes: 0 ok, 1 refuted or failed verdict, 2 usage or precondition
error, 3 handle-reduction step budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .braid import DEFAULT_MAX_STEPS, StepBudgetExceeded, handle_reduce, sigma_classify
from .conradian import SoulBounds, soul_approximation
from .crossings import (
    DEFAULT_N_MAX,
    CrossingCandidate,
    CrossingError,
    crossing_from_n2_violation,
    crossing_from_nonconradian,
    nonconradian_from_crossing,
    refine_between,
    search_crossings,
    to_reinforced,
    verify_crossing,
    verify_reinforced,
)
from .order_space import (
    ExperimentReport,
    agreement_radius,
    conjugate_orbit_fingerprints,
    convex_subgroup_experiment,
    distinct_fingerprints,
    fingerprint,
    klein_enumeration,
    primero_perturbation,
    refined_crossing_below,
    rigidity_experiment,
)
from .orderings import EXOTIC_C, KLEIN_CONES, OrderingError, Sign, compare, parse_ordering
from .words import FREE2, KLEIN, Braid, GroupTag, WordError, parse_word

SCHEMA = "ordercalc/1"


class UsageError(Exception):
    pass


def parse_group(text: str) -> GroupTag:
    t = text.strip()
    if t.upper() in ("F2", "FREE2"):
        return FREE2
    if t.upper() in ("K", "KLEIN"):
        return KLEIN
    if t[:1] in "bB" and t[1:].isdigit():
        return Braid(int(t[1:]))
    raise UsageError(f"unknown group {text!r} (use B<n>, F2 or K)")


def _emit(args, doc: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **doc}, ensure_ascii=False, indent=2))
    else:
        print(text)


def _candidate(args, ord) -> CrossingCandidate:
    if not args.json:
        raise UsageError("--json <candidate> is required")
    return CrossingCandidate.from_json(args.json, ord.tag)


def _figure(args, draw) -> None:
    if getattr(args, "figure", None):
        from . import plotting

        draw(plotting, args.figure)


# -- handlers -------------------------------------------------------------------------


def cmd_compare(args) -> int:
    ord = parse_ordering(args.order)
    u, v = parse_word(args.u, ord.tag), parse_word(args.v, ord.tag)
    s = compare(ord, u, v)
    rel = {Sign.POSITIVE: "≺", Sign.NEGATIVE: "≻", Sign.ZERO: "="}[s]
    _emit(args, {"command": "compare", "order": str(ord), "lhs": str(u), "rhs": str(v), "relation": rel},
          f"{u} {rel} {v}")
    return 0


def cmd_reduce(args) -> int:
    tag = parse_group(args.group)
    w = parse_word(args.word, tag)
    r = handle_reduce(w, args.max_steps)
    _emit(args, {"command": "reduce", "group": str(tag), "input": str(w), "reduced": str(r)}, str(r))
    return 0


def cmd_classify(args) -> int:
    tag = parse_group(args.group)
    w = parse_word(args.word, tag)
    cls = sigma_classify(w, args.max_steps)
    _emit(
        args,
        {"command": "classify", "group": str(tag), "input": str(w), "class": str(cls), "reduced": str(cls.reduced)},
        f"{cls} ({cls.reduced})",
    )
    return 0


def _report_doc(command: str, ord, c, report) -> dict:
    return {"command": command, "order": str(ord), "candidate": c.to_json(), "report": report.to_json()}


def cmd_crossing_verify(args) -> int:
    ord = parse_ordering(args.order)
    c = _candidate(args, ord)
    report = verify_reinforced(ord, c) if args.reinforced else verify_crossing(ord, c, args.nmax)
    _emit(args, _report_doc("crossing verify", ord, c, report), str(report))
    return 0 if report.ok else 1


def cmd_crossing_convert(args) -> int:
    ord = parse_ordering(args.order)
    c = _candidate(args, ord)
    r = to_reinforced(c)
    report = verify_reinforced(ord, r)
    _emit(args, _report_doc("crossing convert", ord, r, report), f"{json.dumps(r.to_json())}\n{report}")
    return 0 if report.ok else 1


def cmd_crossing_search(args) -> int:
    ord = parse_ordering(args.order)
    found = search_crossings(ord, args.radius, args.M_max, args.N_max, args.nmax, args.limit)
    doc = {
        "command": "crossing search",
        "order": str(ord),
        "bounds": {"radius": args.radius, "M_max": args.M_max, "N_max": args.N_max, "n_max": args.nmax},
        "limit": args.limit,
        "results": [{"candidate": c.to_json(), "report": r.to_json()} for c, r in found],
    }
    lines = [f"{json.dumps(c.to_json())}  {r}" for c, r in found] or ["no crossing within the bounds"]
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_crossing_from_witness(args) -> int:
    ord = parse_ordering(args.order)
    f, g = parse_word(args.f, ord.tag), parse_word(args.g, ord.tag)
    build = crossing_from_n2_violation if args.variant == "n2" else crossing_from_nonconradian
    c = build(ord, f, g)
    report = verify_crossing(ord, c, max(args.nmax, c.M, c.N))
    _emit(args, _report_doc("crossing from-witness", ord, c, report), f"{json.dumps(c.to_json())}\n{report}")
    return 0 if report.ok else 1


def cmd_crossing_to_witness(args) -> int:
    ord = parse_ordering(args.order)
    c = _candidate(args, ord)
    pair = nonconradian_from_crossing(ord, c, args.nmax)
    _emit(args, {"command": "crossing to-witness", "order": str(ord), "candidate": c.to_json(), **pair.to_json()},
          f"h = {pair.h}, h_bar = {pair.h_bar}, checked n <= {pair.n_checked}")
    return 0


def cmd_crossing_refine(args) -> int:
    ord = parse_ordering(args.order)
    c = _candidate(args, ord)
    h1, h2 = parse_word(args.h1, ord.tag), parse_word(args.h2, ord.tag)
    out = refine_between(ord, c, h1, h2, args.nmax)
    bound = max(args.nmax - (c.M + c.N), c.M, c.N)
    report = verify_crossing(ord, out, bound)
    _emit(args, _report_doc("crossing refine", ord, out, report), f"{json.dumps(out.to_json())}\n{report}")
    return 0 if report.ok else 1


def cmd_soul(args) -> int:
    ord = parse_ordering(args.order)
    bounds = SoulBounds(*args.bounds)
    soul = soul_approximation(ord, args.radius, bounds, workers=args.threads)
    text = "\n".join(
        [
            "retained: " + " ".join(str(w) for w in soul.retained),
            "excluded: " + " ".join(str(w) for w in soul.excluded),
            soul.CAVEAT,
        ]
    )
    _emit(args, {"command": "soul", **soul.to_json()}, text)
    _figure(args, lambda p, path: p.soul_figure(soul, path))
    return 0


def cmd_space_fingerprint(args) -> int:
    ord = parse_ordering(args.order)
    fp = fingerprint(ord, args.radius)
    _emit(args, {"command": "space fingerprint", "order": str(ord), **fp.to_json()}, str(fp))
    _figure(args, lambda p, path: p.fingerprint_heatmap([(str(ord), fp)], path, f"fingerprint radius {args.radius}"))
    return 0


def cmd_space_orbit(args) -> int:
    ord = parse_ordering(args.order)
    fps = conjugate_orbit_fingerprints(ord, args.conj_radius, args.fp_radius)
    distinct = distinct_fingerprints(fps)
    classes = {str(h): distinct.index(fp) for h, fp in fps.items()}
    doc = {
        "command": "space orbit",
        "order": str(ord),
        "conj_radius": args.conj_radius,
        "fp_radius": args.fp_radius,
        "distinct": len(distinct),
        "classes": classes,
        "fingerprints": [fp.to_json()["signs"] for fp in distinct],
    }
    text = f"{len(distinct)} distinct fingerprints\n" + "\n".join(f"{h}: {k}" for h, k in classes.items())
    _emit(args, doc, text)
    _figure(
        args,
        lambda p, path: p.fingerprint_heatmap(
            [(f"conj by {h}", fp) for h, fp in fps.items()], path, f"conjugates of {ord}"
        ),
    )
    return 0


def cmd_space_agreement(args) -> int:
    o1, o2 = parse_ordering(args.order), parse_ordering(args.other)
    r = agreement_radius(o1, o2, args.max_radius)
    _emit(args, {"command": "space agreement", "order": str(o1), "other": str(o2), "max_radius": args.max_radius,
                 "agreement_radius": r}, str(r))
    return 0


def _emit_experiment(args, report: ExperimentReport) -> int:
    summary = f"{report.experiment}: {report.verdict}"
    if report.summary:
        summary += " " + json.dumps(report.summary)
    if report.witness is not None:
        summary += "\nwitness: " + json.dumps(report.witness, ensure_ascii=False)
    _emit(args, report.to_json(), summary)
    return 0 if report.passed else 1


def cmd_experiment_rigidity(args) -> int:
    report = rigidity_experiment(args.conj_radius, args.check_radius)
    code = _emit_experiment(args, report)
    _figure(
        args,
        lambda p, path: p.fingerprint_heatmap(
            [(f"conj by {h}", fp) for h, fp in conjugate_orbit_fingerprints(EXOTIC_C, args.conj_radius,
                                                                              args.check_radius).items()],
            path,
            "conjugates of exoticC",
        ),
    )
    return code


def cmd_experiment_convex(args) -> int:
    return _emit_experiment(args, convex_subgroup_experiment(args.radius))


def cmd_experiment_klein(args) -> int:
    report = klein_enumeration(args.radius)
    code = _emit_experiment(args, report)
    _figure(
        args,
        lambda p, path: p.fingerprint_heatmap(
            [(str(k), fingerprint(k, args.radius)) for k in KLEIN_CONES], path, "Klein cones"
        ),
    )
    return code


def cmd_experiment_primero(args) -> int:
    ord = parse_ordering(args.order)
    family = [parse_word(w, ord.tag) for w in args.family]
    if args.json:
        c = _candidate(args, ord)
    else:
        least = family[0]
        for f in family[1:]:
            if compare(ord, f, least) == Sign.POSITIVE:
                least = f
        c = refined_crossing_below(ord, least, n_max=args.nmax)
    # a refined candidate is only verified up to nmax - (M + N)
    bound = args.nmax if args.json else max(args.nmax - (c.M + c.N), c.M, c.N)
    return _emit_experiment(args, primero_perturbation(ord, c, family, bound))


# -- parser ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, order: bool = True) -> None:
    if order:
        p.add_argument("--order", required=True, help="ordering designator, e.g. exoticC, dd:3, klein:+-")
    p.add_argument("--format", choices=("json", "text"), default="text")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ord",
        description="Left orderings, crossings and Conradian souls on braid, free and Klein-bottle groups.",
        epilog="Words: braids 's1 S2' (S = inverse), free group 'xY', Klein group 'aB'; '1' is the identity. "
        "Orderings: dehornoy:N, dd:N, exoticC, klein:+-, conj(<order>,<word>), rev(<order>), "
        "ext(<order>,<subgroup>,<order>).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="compare two words; 'u ≺ v' means u is smaller")
    _common(p)
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_compare)

    for name, func, help_ in (
        ("reduce", cmd_reduce, "handle-reduce a braid word"),
        ("classify", cmd_classify, "sigma-classify a braid word"),
    ):
        p = sub.add_parser(name, help=help_)
        _common(p, order=False)
        p.add_argument("--group", default="B3", help="braid group B<n> (default B3)")
        p.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS)
        p.add_argument("word")
        p.set_defaults(func=func)

    crossing = sub.add_parser("crossing", help="crossing tools").add_subparsers(dest="action", required=True)
    cand_help = 'candidate JSON, e.g. \'{"f":"Y","g":"x","u":"1","v":"yx","w":"xx","M":3,"N":1}\''

    p = crossing.add_parser("verify", help="verify a crossing up to --nmax (or a reinforced one exactly)")
    _common(p)
    p.add_argument("--json", help=cand_help)
    p.add_argument("--nmax", type=_positive, default=DEFAULT_N_MAX)
    p.add_argument("--reinforced", action="store_true")
    p.set_defaults(func=cmd_crossing_verify)

    p = crossing.add_parser("convert", help="convert to the reinforced form and verify it")
    _common(p)
    p.add_argument("--json", help=cand_help)
    p.set_defaults(func=cmd_crossing_convert)

    p = crossing.add_parser("search", help="bounded exhaustive crossing search")
    _common(p)
    p.add_argument("--radius", type=_positive, default=3)
    p.add_argument("--M-max", dest="M_max", type=_positive, default=4)
    p.add_argument("--N-max", dest="N_max", type=_positive, default=4)
    p.add_argument("--nmax", type=_positive, default=10)
    p.add_argument("--limit", type=_nonneg, default=10)
    p.set_defaults(func=cmd_crossing_search)

    p = crossing.add_parser("from-witness", help="crossing from a non-Conradian pair f, g")
    _common(p)
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--variant", choices=("general", "n2"), default="general")
    p.add_argument("--nmax", type=_positive, default=DEFAULT_N_MAX)
    p.set_defaults(func=cmd_crossing_from_witness)

    p = crossing.add_parser("to-witness", help="non-Conradian pair from a crossing")
    _common(p)
    p.add_argument("--json", help=cand_help)
    p.add_argument("--nmax", type=_positive, default=DEFAULT_N_MAX)
    p.set_defaults(func=cmd_crossing_to_witness)

    p = crossing.add_parser("refine", help="move a crossing between h1 and h2")
    _common(p)
    p.add_argument("--json", help=cand_help)
    p.add_argument("--h1", default="1")
    p.add_argument("--h2", required=True)
    p.add_argument("--nmax", type=_positive, default=DEFAULT_N_MAX)
    p.set_defaults(func=cmd_crossing_refine)

    p = sub.add_parser("soul", help="crossing-based approximation of the Conradian soul")
    _common(p)
    p.add_argument("--radius", type=_nonneg, default=2)
    p.add_argument("--bounds", type=_positive, nargs=4, default=[3, 4, 4, 10],
                   metavar=("RADIUS", "M_MAX", "N_MAX", "NMAX"))
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--figure", help="write a PNG of the ranked ball")
    p.set_defaults(func=cmd_soul)

    space = sub.add_parser("space", help="fingerprints in the space of orderings").add_subparsers(
        dest="action", required=True
    )
    p = space.add_parser("fingerprint")
    _common(p)
    p.add_argument("--radius", type=_nonneg, default=2)
    p.add_argument("--figure")
    p.set_defaults(func=cmd_space_fingerprint)

    p = space.add_parser("orbit")
    _common(p)
    p.add_argument("--conj-radius", type=_nonneg, default=2)
    p.add_argument("--fp-radius", type=_nonneg, default=2)
    p.add_argument("--figure")
    p.set_defaults(func=cmd_space_orbit)

    p = space.add_parser("agreement")
    _common(p)
    p.add_argument("--other", required=True)
    p.add_argument("--max-radius", type=_nonneg, default=4)
    p.set_defaults(func=cmd_space_agreement)

    exp = sub.add_parser("experiment", help="desk-scale experiments").add_subparsers(dest="action", required=True)
    p = exp.add_parser("rigidity")
    _common(p, order=False)
    p.add_argument("--conj-radius", type=_nonneg, default=3)
    p.add_argument("--check-radius", type=_nonneg, default=3)
    p.add_argument("--figure")
    p.set_defaults(func=cmd_experiment_rigidity)

    p = exp.add_parser("convex")
    _common(p, order=False)
    p.add_argument("--radius", type=_nonneg, default=3)
    p.set_defaults(func=cmd_experiment_convex)

    p = exp.add_parser("klein")
    _common(p, order=False)
    p.add_argument("--radius", type=_positive, default=5)
    p.add_argument("--figure")
    p.set_defaults(func=cmd_experiment_klein)

    p = exp.add_parser("primero")
    p.add_argument("--order", default="exoticC")
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.add_argument("--json", help=cand_help + "; searched and refined below the family when omitted")
    p.add_argument("--family", nargs="+", default=["xxx", "xxxx"])
    p.add_argument("--nmax", type=_positive, default=DEFAULT_N_MAX)
    p.set_defaults(func=cmd_experiment_primero)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except StepBudgetExceeded as exc:
        print(f"ord: {exc}", file=sys.stderr)
        return 3
    except (UsageError, WordError, OrderingError, CrossingError, ValueError) as exc:
        print(f"ord: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
