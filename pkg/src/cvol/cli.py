"""Command line interface.

Exit codes: 0 success, 1 usage or I/O, 2 PD parse, 3 solver or coloring
failure, 4 degeneracy (including reducible colorings), 5 numerical breakdown.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

from .coloring import ShadowColoring
from .diagram import build_diagram, parse_pd
from .errors import CvolError
from .pipeline import compute_all, compute_complex_volume, solve, verify, with_tolerance
from .selftest import run_selftest

log = logging.getLogger("cvol")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_pd(p):
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pd", metavar="FILE", help="file holding a PD code (X[...] text or JSON)")
    g.add_argument("--pd-inline", metavar="STR", help="PD code given on the command line")


def _add_common(p):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=50, help="solver and lift attempts")
    p.add_argument("--tol", type=float, default=None, help="scale all tolerances (default 1e-9)")
    p.add_argument("--json", action="store_true", help="print JSON")
    p.add_argument("--out", metavar="FILE", help="also write the JSON result to FILE")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cvol", description="Complex volume of a hyperbolic link from its PD code.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="find parabolic arc colorings")
    _add_pd(p)
    _add_common(p)

    p = sub.add_parser("compute", help="compute the complex volume")
    _add_pd(p)
    p.add_argument("--coloring", metavar="FILE", help="use this coloring instead of solving")
    p.add_argument("--all", action="store_true", help="report every coloring class found")
    _add_common(p)

    p = sub.add_parser("verify", help="re-run all checks on a saved computation")
    p.add_argument("artifact", help="JSON written by 'compute --out'")
    p.add_argument("--seed", type=int, default=None, help="seed for the independence recheck")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("selftest", help="run the built-in property suites")
    p.add_argument("--seed", type=int, default=0)
    return ap


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


class _UsageError(Exception):
    pass


def _pd_text(args) -> str:
    return _read(args.pd) if args.pd else args.pd_inline


def _emit(args, payload, text: str) -> None:
    if getattr(args, "out", None):
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, indent=2)
        except OSError as exc:
            raise _UsageError(f"cannot write {args.out}: {exc.strerror}") from None
    print(json.dumps(payload, indent=2) if args.json else text)


def _load_coloring(path: str) -> ShadowColoring:
    try:
        data = json.loads(_read(path))
        if "coloring" in data:
            data = data["coloring"]
        return ShadowColoring.from_json(data)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise _UsageError(f"bad coloring file {path}: {exc}") from None


def _fmt(r) -> str:
    # round first so that -1e-16 does not print as -0.000...
    vol, cs = (round(v, 13) + 0.0 for v in (r.volume, r.cs))
    return f"volume  {vol:.13f}\ncs      {cs:.13f}"


def cmd_solve(args) -> int:
    d = build_diagram(parse_pd(_pd_text(args)))
    sols = solve(d, seed=args.seed, attempts=args.attempts)
    payload = {"n_arcs": d.n_arcs, "colorings": [s.to_json() for s in sols]}
    lines = [f"{d.n_crossings} crossings, {d.n_arcs} arcs, {len(sols)} coloring classes"]
    for k, s in enumerate(sols):
        kind = "reducible" if s.reducible else "irreducible"
        lines.append(f"[{k}] {kind:11s} residual {s.residual:.2e}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_compute(args) -> int:
    tol = with_tolerance(args.tol)
    d = build_diagram(parse_pd(_pd_text(args)))
    if args.coloring:
        S = _load_coloring(args.coloring)
        results = [compute_complex_volume(d, S, seed=args.seed, tol=tol, max_attempts=args.attempts)]
    else:
        results = compute_all(d, seed=args.seed, attempts=args.attempts, tol=tol)
    if args.all:
        payload = [r.to_json() for r in results]
        text = "\n\n".join(f"[{k}]\n{_fmt(r)}" for k, r in enumerate(results))
    else:
        payload = results[0].to_json()
        text = _fmt(results[0])
    _emit(args, payload, text)
    return 0


def cmd_verify(args) -> int:
    try:
        data = json.loads(_read(args.artifact))
    except json.JSONDecodeError as exc:
        raise _UsageError(f"bad artifact: {exc}") from None
    if isinstance(data, list):
        data = data[0]
    report = verify(data, with_tolerance(args.tol), recheck_seed=args.seed)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
    else:
        for c in report.checks:
            print(f"{'ok  ' if c.ok else 'FAIL'} {c.name}" + (f"  ({c.detail})" if c.detail else ""))
    return 0 if report.ok else 5


def cmd_selftest(args) -> int:
    results = run_selftest(args.seed)
    for c, dt in results:
        print(f"{'ok  ' if c.ok else 'FAIL'} {c.name}  [{dt:.2f}s]  {c.detail}")
    return 0 if all(c.ok for c, _ in results) else 5


COMMANDS = {"solve": cmd_solve, "compute": cmd_compute, "verify": cmd_verify, "selftest": cmd_selftest}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"cvol: {exc}", file=sys.stderr)
        return 1
    except CvolError as exc:
        print(f"cvol: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
