"""Command-line entry point: ``leibniz <command> ...``.

Exit codes: 0 success (all verified), 1 a check failed or a theorem was
falsified, 2 usage or I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import harness, oracle
from .algebra import (
    check_leibniz,
    from_json,
    parse_subspace,
    subspace_to_json,
    to_json,
)
from .cartan import find_cartan, is_cartan
from .conj import conjugate_cartans, conjugate_cartans_abelian_J
from .errors import LeibnizError
from .generate import GeneratorSpec, Instance, gen_solvable, levi_sums
from .series import (
    derived_series,
    is_solvable,
    lower_central_series,
    nilpotency_class,
    nilpotent_length,
    nilradical,
    radical,
    upper_central_series,
)


class UsageError(Exception):
    pass


def _load(path: str, check: bool = True):
    try:
        with (sys.stdin if path == "-" else open(path, encoding="utf-8")) as fp:
            obj = json.load(fp)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    return from_json(obj, check=check)


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _series_json(s) -> dict:
    return {"terms": [subspace_to_json(t) for t in s.terms], "stabilized": s.stabilized}


def cmd_check(args) -> int:
    L = _load(args.file, check=False)
    bad = check_leibniz(L)
    _emit({"dim": L.n, "leibniz": not bad, "violations": [list(t) for t in bad]})
    return 0 if not bad else 1


def cmd_series(args) -> int:
    L = _load(args.file)
    out = {
        "derived": _series_json(derived_series(L)),
        "lower_central": _series_json(lower_central_series(L)),
        "upper_central": _series_json(upper_central_series(L)),
        "nilpotency_class": nilpotency_class(L),
        "solvable": is_solvable(L),
    }
    try:
        out["nilradical"] = subspace_to_json(nilradical(L))
    except LeibnizError as exc:
        out["nilradical"] = f"unavailable: {exc}"
    if out["solvable"]:
        cert = nilpotent_length(L)
        out["nilpotent_length"] = cert.length
        out["length_chain"] = [subspace_to_json(t) for t in cert.chain]
    if not L.field.p:
        out["radical"] = subspace_to_json(radical(L))
    _emit(out)
    return 0


def cmd_cartan(args) -> int:
    L = _load(args.file)
    H = find_cartan(L, seed=args.seed)
    _emit({"cartan": subspace_to_json(H), "verified": is_cartan(L, H)})
    return 0


def cmd_conjugate(args) -> int:
    L = _load(args.file)
    H1 = parse_subspace(L.field, args.h1, L.n)
    H2 = parse_subspace(L.field, args.h2, L.n)
    solver = conjugate_cartans_abelian_J if args.abelian_j else conjugate_cartans
    cert = solver(L, H1, H2)
    _emit(cert.to_json())
    return 0


ENUMERATIONS = {
    "subspaces": lambda L, a: oracle.all_subspaces(L.n, L.field),
    "subalgebras": lambda L, a: oracle.enum_subalgebras(L),
    "ideals": lambda L, a: oracle.enum_ideals(L),
    "minimal-ideals": lambda L, a: oracle.enum_minimal_ideals(L),
    "maximal": lambda L, a: oracle.enum_maximal_subalgebras(L),
    "cartans": lambda L, a: oracle.enum_cartans(L),
    "complements": lambda L, a: oracle.enum_complements(L, _need_ideal(L, a)),
}


def _need_ideal(L, args):
    if not args.ideal:
        raise UsageError("--ideal is required for complements")
    return parse_subspace(L.field, args.ideal, L.n)


def cmd_enumerate(args) -> int:
    L = _load(args.file)
    items = ENUMERATIONS[args.what](L, args)
    _emit({"what": args.what, "count": len(items), "items": [subspace_to_json(U) for U in items]})
    return 0


def _report(reports, out: Optional[str]) -> int:
    summary: dict = {}
    for r in reports:
        row = summary.setdefault(r.theorem, {"verified": 0, "falsified": 0, "skipped": 0})
        row[r.verdict] += 1
    if out and out != "-":
        try:
            with open(out, "w", encoding="utf-8") as fp:
                harness.dump_reports(reports, fp)
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from exc
    else:
        harness.dump_reports(reports, sys.stdout)
    print(harness.summary_table(summary))
    return 1 if any(r.verdict == "falsified" for r in reports) else 0


def cmd_verify(args) -> int:
    if args.theorem == "T6-structural":
        return _report(harness.verify_T6(levi_sums(args.seed, args.count)), args.out)
    if args.file:
        instances = [Instance(_load(f), "file", 0, i) for i, f in enumerate(args.file)]
    elif args.pool == "small":
        instances = harness.small_pool(args.seed, args.count)
    else:
        F = harness.parse_field(args.field)
        spec = GeneratorSpec(args.family, F, args.seed, args.count, args.min_dim, args.max_dim)
        instances = list(gen_solvable(spec))
    return _report(harness.verify(args.theorem, instances), args.out)


def cmd_suite(args) -> int:
    config = None
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fp:
                config = json.load(fp)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
    result = harness.run_suite(config, only=args.only)
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fp:
            json.dump(result.summary, fp, sort_keys=True, indent=2)
    return _report(result.reports, args.out)


def cmd_generate(args) -> int:
    F = harness.parse_field(args.field)
    spec = GeneratorSpec(args.family, F, args.seed, args.count, args.min_dim, args.max_dim)
    for inst in gen_solvable(spec):
        _emit({"id": inst.ident, "algebra": to_json(inst.algebra)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leibniz", description="Exact computations in finite-dimensional Leibniz algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate the left Leibniz identity")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("series", help="derived/central series, nilradical, length, radical")
    s.add_argument("file")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("cartan", help="find a Cartan subalgebra")
    s.add_argument("file")
    s.add_argument("--seed", type=int, default=None, help="random candidate stream instead of the fixed order")
    s.set_defaults(func=cmd_cartan)

    s = sub.add_parser("conjugate", help="certificate conjugating two Cartan subalgebras")
    s.add_argument("file")
    s.add_argument("--h1", required=True, help='basis as "1,0,0;0,1,0"')
    s.add_argument("--h2", required=True)
    s.add_argument("--abelian-j", action="store_true", help="single exp(L_z) with z in J (J abelian)")
    s.set_defaults(func=cmd_conjugate)

    s = sub.add_parser("enumerate", help="exhaustive enumeration over GF(2)/GF(3)")
    s.add_argument("file")
    s.add_argument("--what", choices=sorted(ENUMERATIONS), required=True)
    s.add_argument("--ideal", help="ideal for --what complements")
    s.set_defaults(func=cmd_enumerate)

    def instance_args(s):
        s.add_argument("--family", default="nilpotent_plus_derivations")
        s.add_argument("--field", default="Q")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--count", type=int, default=10)
        s.add_argument("--min-dim", type=int, default=1)
        s.add_argument("--max-dim", type=int, default=6)

    s = sub.add_parser("verify", help="verify one theorem on a family or on algebra files")
    s.add_argument("--theorem", required=True, choices=harness.THEOREMS)
    s.add_argument("--pool", choices=["generated", "small"], default="generated")
    s.add_argument("--file", nargs="*", help="algebra JSON files instead of a generated family")
    s.add_argument("--out", default="-", help="JSON-lines report file (default stdout)")
    instance_args(s)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("suite", help="run the acceptance matrix")
    s.add_argument("--config", help="JSON config (default: built-in matrix)")
    s.add_argument("--only", nargs="*", help="restrict to these theorem ids")
    s.add_argument("--out", default="-")
    s.add_argument("--summary", help="write the summary JSON here")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("generate", help="emit a seeded instance stream as JSON lines")
    instance_args(s)
    s.set_defaults(func=cmd_generate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LeibnizError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
