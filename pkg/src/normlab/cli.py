"""``normlab`` command line: run check suites and print a report.

Exit status is 0 when every record is consistent or exception-witnessed,
1 when any record is FALSIFIED, and 2 on usage or configuration errors.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from .algebra_probe import HYPERPLANE_CAP
from .errors import NormlabError
from .ffield import is_prime
from .report import Report, emit_report
from .suites import probe_records, select_towers, tower_records
from .tower import TOWER_CARD_CAP

SWEEP_CARD = 1024
TOWER_GROUPS = {
    "tower": ["tower"],
    "normal": ["normal"],
    "pnb": ["pnb"],
    "gamma": ["gamma"],
    "suite": ["tower", "normal", "pnb", "gamma"],
}


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="normlab", description="Exhaustive checks on finite field towers and small algebras.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "tower": "Frobenius and trace checks, kernel of the trace",
        "normal": "normal element enumeration and counts",
        "pnb": "primitive normal element search",
        "gamma": "C, w, the four-way condition sweep, Hom(G, K*), transport to KG",
        "probe": "hyperplane/unit checks on the algebra catalog",
        "suite": "everything above under the caps",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text, description=text)
        if name != "probe":
            sp.add_argument("--p", type=int, help="characteristic; omit to sweep the default tower list")
            sp.add_argument("--k", type=_positive, default=1, help="[K : F_p] (default 1)")
            sp.add_argument("--m", type=_positive, help="[L : K]")
            sp.add_argument("--max-card", type=_positive, default=None,
                            help=f"largest |L| (default {SWEEP_CARD} for sweeps, {TOWER_CARD_CAP} for one tower)")
            sp.add_argument("--details", action="store_true", help="include per-gamma condition vectors")
        if name in ("probe", "suite"):
            sp.add_argument("--catalog", default=None, help="catalog file (default: bundled catalog)")
            sp.add_argument("--max-hyperplanes", type=_positive, default=HYPERPLANE_CAP)
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        sp.add_argument("--workers", type=_positive, default=1, help="worker processes (output order is unaffected)")
        sp.add_argument("--no-timing", action="store_true", help="omit timing fields")
        sp.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    return ap


def _towers(args) -> tuple[list[tuple[int, int, int]], int]:
    if args.p is None:
        if args.m is not None:
            raise UsageError("--m needs --p")
        cap = args.max_card or SWEEP_CARD
        return select_towers(cap), cap
    if args.m is None:
        raise UsageError("--p needs --m")
    if not is_prime(args.p):
        raise UsageError(f"{args.p} is not prime")
    return [(args.p, args.k, args.m)], args.max_card or TOWER_CARD_CAP


def _job(job):
    kind, payload = job
    if kind == "tower":
        params, groups, cap, details = payload
        return tower_records(params, groups, cap, details)
    catalog, hcap = payload
    return probe_records(catalog, hcap)


def _config(args, towers, cap) -> dict:
    cfg = {"command": args.command}
    if args.command != "probe":
        cfg.update(towers=[list(t) for t in towers], max_card=cap, details=args.details)
    if args.command in ("probe", "suite"):
        cfg.update(catalog=args.catalog, max_hyperplanes=args.max_hyperplanes)
    cfg.update(format=args.format, timing=not args.no_timing)
    return cfg


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        jobs, towers, cap = [], [], None
        if args.command != "probe":
            towers, cap = _towers(args)
            groups = TOWER_GROUPS[args.command]
            jobs += [("tower", (t, groups, cap, args.details)) for t in towers]
        if args.command in ("probe", "suite"):
            jobs.append(("probe", (args.catalog, args.max_hyperplanes)))
        if args.workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as ex:
                chunks = list(ex.map(_job, jobs))
        else:
            chunks = [_job(j) for j in jobs]
    except (UsageError, NormlabError, OSError) as exc:
        print(f"normlab: error: {exc}", file=sys.stderr)
        return 2
    report = Report(_config(args, towers, cap), [r for c in chunks for r in c])
    text = emit_report(report, args.format, timing=not args.no_timing)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 1 if report.falsified else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
