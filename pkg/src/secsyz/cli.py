"""Command-line front end: campaign dispatch and report serialization.

Subcommands
    betti           compute one Betti table (single prime)
    index           one geometry + one center, two-prime index report
    thm11-scan      ceiling sweep: index <= s - 3 over witness centers
    thm12           witness centers, expect index = s - 3
    thm13           random centers, expect index = ceil(d/2) - 3
    baseline        unprojected curves, expect index = d - 3
    rnc-check       rational-normal-curve oracle, exact in every trial
    semicontinuity  index distribution over many rank-s centers
    veronese        cubic Veronese surface modes

Exit status: 0 when every asserted expectation passed, 2 when the only
shortfalls are degenerate trials, 1 on failures or engine errors, 64 on
usage errors.  The default prime pair can be overridden with the
``SECSYZ_PRIMES`` environment variable (comma-separated).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .experiments import (
    CampaignSummary,
    run_baseline_unprojected,
    run_index_trial,
    run_rnc_crosscheck,
    run_semicontinuity_probe,
    run_thm11_scan,
    run_thm12,
    run_thm13,
    run_veronese_example,
)
from .geometry import source_order
from .gfp import DEFAULT_PRIMES, is_prime
from .koszul import BettiTable, betti_table
from . import experiments

USAGE_EXIT = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- config parsing -----------------------------------------------------------


def _parse_span(text: str) -> list[int]:
    """'7' -> [7]; '5:9' -> [5, 6, 7, 8, 9]."""
    if ":" in text:
        lo, hi = text.split(":", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise UsageError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


def _default_primes() -> tuple[int, ...]:
    env = os.environ.get("SECSYZ_PRIMES")
    if not env:
        return DEFAULT_PRIMES
    return tuple(int(tok) for tok in env.split(",") if tok.strip())


def _check_primes(primes) -> tuple[int, ...]:
    primes = tuple(primes)
    if not 1 <= len(primes) <= 3:
        raise UsageError(f"need 1 to 3 primes, got {len(primes)}")
    for p in primes:
        if not (3 < p < 1 << 31 and is_prime(p)):
            raise UsageError(f"{p} is not an odd prime below 2**31 (and above 3)")
    if len(set(primes)) != len(primes):
        raise UsageError("primes must be pairwise distinct")
    return primes


def _add_common(sub: argparse.ArgumentParser, trials_default: int | None) -> None:
    sub.add_argument("--seed", type=int, default=0, help="campaign seed (default 0)")
    sub.add_argument("--primes", type=int, nargs="+", metavar="P",
                     help="1 to 3 primes (default from SECSYZ_PRIMES or built-in pair)")
    if trials_default is not None:
        sub.add_argument("--trials", type=int, default=trials_default,
                         help=f"trials per cell (default {trials_default})")
    sub.add_argument("--n-multiplier", type=int, default=2, dest="n_multiplier",
                     help="sample N = multiplier x HF(3) (default 2)")
    sub.add_argument("--i-stop", type=int, default=None, dest="i_stop",
                     help="largest homological step to scan (default: codimension)")
    sub.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sub.add_argument("--output", default="-", help="output path, '-' for stdout")


def _add_d(sub, required=True):
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument("--d", type=int, help="single degree")
    group.add_argument("--d-range", dest="d_range", help="inclusive degree range A:B")


def _add_s(sub, required=False):
    group = sub.add_mutually_exclusive_group(required=required)
    group.add_argument("--s", type=int, help="witness size (secant rank bound)")
    group.add_argument("--s-range", dest="s_range", help="inclusive range A:B")


def build_parser() -> _Parser:
    parser = _Parser(prog="secsyz", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("betti", help="Betti table of one geometry (first prime)")
    sub.add_argument("--geometry", choices=("elliptic", "rational", "veronese"),
                     required=True)
    sub.add_argument("--d", type=int, help="degree (elliptic/rational)")
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--s", type=int, help="project from a rank-s witness center")
    group.add_argument("--general", action="store_true",
                       help="project from a random center")
    _add_common(sub, trials_default=None)

    sub = subs.add_parser("index", help="index report for one geometry + center")
    sub.add_argument("--geometry", choices=("elliptic", "rational", "veronese"),
                     required=True)
    sub.add_argument("--d", type=int, help="degree (elliptic/rational)")
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--s", type=int, help="rank-s witness center")
    group.add_argument("--general", action="store_true",
                       help="random center (default)")
    _add_common(sub, trials_default=None)

    sub = subs.add_parser("thm11-scan", help="ceiling sweep over witness centers")
    _add_d(sub)
    _add_s(sub)
    _add_common(sub, trials_default=3)

    sub = subs.add_parser("thm12", help="witness centers: index = s - 3")
    _add_d(sub)
    _add_s(sub, required=True)
    _add_common(sub, trials_default=5)

    sub = subs.add_parser("thm13", help="random centers: index = ceil(d/2) - 3")
    _add_d(sub)
    _add_common(sub, trials_default=5)

    sub = subs.add_parser("baseline", help="unprojected curves: index = d - 3")
    _add_d(sub, required=False)
    _add_common(sub, trials_default=1)

    sub = subs.add_parser("rnc-check", help="rational normal curve oracle")
    _add_d(sub, required=False)
    _add_s(sub)
    _add_common(sub, trials_default=3)

    sub = subs.add_parser("semicontinuity", help="index distribution over centers")
    sub.add_argument("--d", type=int, default=9)
    sub.add_argument("--s", type=int, default=4)
    _add_common(sub, trials_default=20)

    sub = subs.add_parser("veronese", help="cubic Veronese surface example")
    sub.add_argument("--mode", choices=("general", "rank3"), default="general")
    _add_common(sub, trials_default=5)

    return parser


# -- validation ---------------------------------------------------------------


def _elliptic_cells(args, source: str, d_cap: int = 12):
    """(d_values, s_values or None) with strict checks for explicit values."""
    if args.d is not None:
        d_values = [args.d]
    elif getattr(args, "d_range", None):
        d_values = _parse_span(args.d_range)
    else:
        d_values = [5, 6, 7, 8, 9]
    d_floor = 4 if source == "rational" else 5
    for d in d_values:
        if d < d_floor:
            raise UsageError(f"degree d={d} violates d >= {d_floor}")
        if d > d_cap:
            raise UsageError(
                f"degree d={d} violates the cap d <= {d_cap} for this command "
                "(strand matrices grow fast; call the library directly to go higher)"
            )
    s_values = None
    explicit_s = getattr(args, "s", None)
    if explicit_s is not None:
        if args.d is not None:
            order = source_order(source, args.d)
            if not 3 <= explicit_s <= order:
                raise UsageError(
                    f"s={explicit_s} violates 3 <= s <= order = "
                    f"ceil({'(d+1)' if source == 'rational' else 'd'}/2) = {order} "
                    f"for d={args.d}"
                )
            s_values = [explicit_s]
        else:
            s_values = [explicit_s]  # clipped per d below
    elif getattr(args, "s_range", None):
        s_values = _parse_span(args.s_range)
    if s_values is not None:
        for s in s_values:
            if s < 3:
                raise UsageError(f"s={s} violates s >= 3")
    return d_values, s_values


def _clip_cells(source: str, d_values, s_values):
    """Cross product with inadmissible (d, s) pairs dropped."""
    cells = []
    for d in d_values:
        order = source_order(source, d)
        for s in s_values:
            if 3 <= s <= order:
                cells.append((d, s))
    if not cells:
        raise UsageError("no admissible (d, s) cells in the requested ranges")
    return cells


# -- serialization ------------------------------------------------------------


def campaign_json_dict(summary: CampaignSummary) -> dict:
    """The machine-diffable report: exact key set, no timings."""
    totals = summary.totals()
    return {
        "command": summary.command,
        "config": summary.config,
        "trials": [rec.to_json_dict() for rec in summary.records],
        "summary": {
            "passes": totals["passes"],
            "fails": totals["fails"],
            "degenerate": totals["degenerate"],
            "max_index": totals["max_index"],
            "agreement": totals["agreement"],
        },
    }


def campaign_csv(summary: CampaignSummary) -> str:
    strand_is = sorted(
        {b[0] for rec in summary.records if rec.betti for b in rec.betti}
    )
    header = ["d", "s", "prime", "seed", "index", "expected", "status",
              "h1", "h2", "h3"] + [f"b{i}_{i + 2}" for i in strand_is]
    lines = [",".join(header)]
    for rec in summary.records:
        hil = dict(rec.hilbert) if rec.hilbert else {}
        strands = {b[0]: b[2] for b in rec.betti} if rec.betti else {}
        row = [
            "" if rec.d is None else str(rec.d),
            "general" if rec.s is None else str(rec.s),
            str(rec.prime),
            ":".join(str(x) for x in rec.seed),
            "" if rec.index is None else str(rec.index),
            "" if rec.expected is None else str(rec.expected),
            rec.status,
            *(str(hil.get(k, "")) for k in (1, 2, 3)),
            *(str(strands.get(i, "")) for i in strand_is),
        ]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def campaign_table(summary: CampaignSummary) -> str:
    totals = summary.totals()
    out = [f"campaign: {summary.command}"]
    cfg = summary.config
    out.append(
        "config: seed={} trials={} primes={} n_multiplier={} i_stop={}".format(
            cfg.get("seed"), cfg.get("trials"),
            ",".join(str(p) for p in cfg.get("primes", ())),
            cfg.get("n_multiplier"), cfg.get("i_stop"),
        )
    )
    header = (f"{'cell':<18}{'expect':>7}{'trials':>7}{'pass':>6}{'fail':>6}"
              f"{'degen':>7}{'flag':>6}{'max':>5}{'min':>5}{'agree':>7}  verdict")
    out.append(header)
    out.append("-" * len(header))
    fmt_opt = lambda v: "-" if v is None else str(v)
    for cell in summary.cells:
        rate = cell.agreement_rate
        out.append(
            f"{cell.label():<18}{fmt_opt(cell.expected):>7}{cell.trials:>7}"
            f"{cell.passes:>6}{cell.fails:>6}{cell.degenerates:>7}{cell.flagged:>6}"
            f"{fmt_opt(cell.max_index):>5}{fmt_opt(cell.min_index):>5}"
            f"{'-' if rate is None else format(rate, '.2f'):>7}"
            f"  {'PASS' if cell.passed else 'FAIL'}"
        )
        if cell.criterion == "semicontinuity":
            dist = " ".join(f"{k}:{v}" for k, v in sorted(cell.distribution.items()))
            out.append(f"  index distribution: {dist}")
    verdict = "PASS" if summary.passed else (
        "DEGENERATE-ONLY" if summary.degenerate_only else "FAIL"
    )
    out.append(
        "overall: {} (passes={} fails={} degenerate={} flagged={} max_index={} "
        "agreement={})".format(
            verdict, totals["passes"], totals["fails"], totals["degenerate"],
            totals["flagged"], fmt_opt(totals["max_index"]),
            fmt_opt(totals["agreement"]),
        )
    )
    return "\n".join(out) + "\n"


def betti_json_dict(table: BettiTable, config: dict) -> dict:
    return {
        "command": "betti",
        "config": config,
        "ambient_dim": table.ambient_dim,
        "prime": table.prime,
        "source": table.source,
        "d": table.d,
        "betti": [[i, j, v] for (i, j), v in sorted(table.entries.items())],
    }


def betti_text_table(table: BettiTable) -> str:
    """Betti diagram: column i, row j - i."""
    i_max = max(i for i, _ in table.entries)
    out = [f"betti table: {table.source} d={table.d} in P^{table.ambient_dim} "
           f"(p={table.prime})"]
    head = "      " + "".join(f"{i:>6}" for i in range(i_max + 1))
    out.append(head)
    for shift in (0, 1, 2):
        cells = []
        for i in range(i_max + 1):
            v = table.entries.get((i, i + shift), 0)
            cells.append(f"{v if v else '.':>6}")
        out.append(f"{shift:>4}: " + "".join(cells))
    return "\n".join(out) + "\n"


def betti_csv(table: BettiTable) -> str:
    lines = ["i,j,value"]
    for (i, j), v in sorted(table.entries.items()):
        lines.append(f"{i},{j},{v}")
    return "\n".join(lines) + "\n"


def _emit(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w") as fh:
            fh.write(text)


def _campaign_exit(summary: CampaignSummary) -> int:
    if summary.passed:
        return 0
    if summary.degenerate_only:
        return 2
    return 1


def _render_campaign(summary: CampaignSummary, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(campaign_json_dict(summary), indent=2) + "\n"
    if fmt == "csv":
        return campaign_csv(summary)
    return campaign_table(summary)


# -- dispatch -----------------------------------------------------------------


def _dispatch(args) -> int:
    primes = _check_primes(args.primes if args.primes else _default_primes())
    common = dict(primes=primes, seed=args.seed, n_multiplier=args.n_multiplier,
                  i_stop=args.i_stop)
    if args.n_multiplier < 2:
        raise UsageError("--n-multiplier must be at least 2")
    if args.i_stop is not None and args.i_stop < 1:
        raise UsageError("--i-stop must be at least 1")

    if args.command == "betti":
        geometry = args.geometry
        s = _single_center_arg(args, geometry, d_cap=9)  # full-table scan
        cfg = {"command": "betti", "geometry": geometry, "d": args.d,
               "s": "general" if args.general else s, "seed": args.seed,
               "prime": primes[0], "n_multiplier": args.n_multiplier,
               "i_stop": args.i_stop}
        g = experiments.build_graded(geometry, args.d, "general" if args.general else s,
                                     primes[0], args.seed, args.n_multiplier)
        table = betti_table(g, args.i_stop)
        if args.format == "json":
            _emit(json.dumps(betti_json_dict(table, cfg), indent=2) + "\n", args.output)
        elif args.format == "csv":
            _emit(betti_csv(table), args.output)
        else:
            _emit(betti_text_table(table), args.output)
        return 0

    if args.command == "index":
        geometry = args.geometry
        s = _single_center_arg(args, geometry)
        summary = run_index_trial(geometry, args.d, s, **common)
        _emit(_render_campaign(summary, args.format), args.output)
        return _campaign_exit(summary)

    if args.command == "thm12":
        d_values, s_values = _elliptic_cells(args, "elliptic")
        if args.d is not None and len(s_values) == 1:
            summary = run_thm12(args.d, s_values[0], trials=args.trials, **common)
        else:
            cells = _clip_cells("elliptic", d_values, s_values)
            summary = _sweep(run_thm12, cells, args.trials, common)
        _emit(_render_campaign(summary, args.format), args.output)
        return _campaign_exit(summary)

    if args.command == "thm11-scan":
        d_values, s_values = _elliptic_cells(args, "elliptic")
        summary = run_thm11_scan(d_values, s_values, trials=args.trials, **common)
        _emit(_render_campaign(summary, args.format), args.output)
        return _campaign_exit(summary)

    if args.command == "thm13":
        d_values, _ = _elliptic_cells(args, "elliptic")
        summary = run_thm13(d_values, trials=args.trials, **common)
        _emit(_render_campaign(summary, args.format), args.output)
        return _campaign_exit(summary)

    if args.command == "baseline":
        d_values, _ = _elliptic_cells(args, "elliptic", d_cap=9)
        summary = run_baseline_unprojected(d_values, trials=args.trials, **common)
        _emit(_render_campaign(summary, args.format), args.output)
        return _campaign_exit(summary)

    if args.command == "rnc-check":
        d_values, s_values = _elliptic_cells(args, "rational", d_cap=9)
        summary = run_rnc_crosscheck(d_values, s_values, trials=args.trials, **common)
        _emit(_render_campaign(summary, args.format), args.output)
        return _campaign_exit(summary)

    if args.command == "semicontinuity":
        order = source_order("elliptic", args.d)
        if not 3 <= args.s <= order:
            raise UsageError(
                f"s={args.s} violates 3 <= s <= order = ceil(d/2) = {order} "
                f"for d={args.d}"
            )
        if args.trials < 20:
            raise UsageError("semicontinuity needs --trials >= 20")
        summary = run_semicontinuity_probe(args.d, args.s, trials=args.trials,
                                           **common)
        _emit(_render_campaign(summary, args.format), args.output)
        return _campaign_exit(summary)

    if args.command == "veronese":
        summary = run_veronese_example(args.mode, trials=args.trials, **common)
        _emit(_render_campaign(summary, args.format), args.output)
        return _campaign_exit(summary)

    raise UsageError(f"unknown command {args.command!r}")


def _single_center_arg(args, geometry: str, d_cap: int = 12) -> int | None:
    """Validated witness size for betti/index, None for general/unprojected."""
    if geometry in ("elliptic", "rational"):
        if args.d is None:
            raise UsageError(f"--d is required for geometry {geometry}")
        floor = 5 if geometry == "elliptic" else 4
        if args.d < floor:
            raise UsageError(f"degree d={args.d} violates d >= {floor}")
        if geometry == "rational":
            d_cap = min(d_cap, 9)
        if args.d > d_cap:
            raise UsageError(f"degree d={args.d} violates the cap d <= {d_cap}")
    elif args.d is not None:
        raise UsageError("--d does not apply to the veronese geometry")
    if args.s is None:
        return None
    order = source_order(geometry, args.d)
    if not 3 <= args.s <= order:
        raise UsageError(
            f"s={args.s} violates 3 <= s <= order = {order}"
            + (f" for d={args.d}" if args.d is not None else "")
        )
    return args.s


def _sweep(runner, cells, trials, common) -> CampaignSummary:
    """Merge per-cell runs of runner into one campaign (for clipped ranges).

    The per-trial seed derivation includes (d, s), so running cells one
    at a time produces exactly the records a single multi-cell call would."""
    summaries = [runner(d, s, trials=trials, **common) for d, s in cells]
    records = [rec for s in summaries for rec in s.records]
    cell_list = [cell for s in summaries for cell in s.cells]
    cfg = dict(summaries[0].config)
    cfg["cells"] = [[d, s] for d, s in cells]
    return CampaignSummary(summaries[0].command, cfg, cell_list, records)


def parse_and_dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return USAGE_EXIT
    except Exception as err:  # engine errors
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
