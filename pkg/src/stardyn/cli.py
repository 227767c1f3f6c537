"""Command-line entry point.

Subcommands
-----------
analyze       full periodicity/chaos report for one pattern (JSON or DOT)
enumerate     list pattern classes for a star size
survey        classification campaign over all classes of a star size
orders        query the period-forcing orders
oracle        exact periodic points of the canonical realization
verify-paper  recompute all quoted reference facts and report pass/fail

Exit codes: 0 success, 1 analysis inconsistency (a certified claim and the
exact oracle disagree, or a reference check fails), 2 usage error, 3
resource cap exceeded.  Usage errors print a synopsis to stderr and
produce no partial output.  Identical inputs yield byte-identical output;
``--out`` writes atomically (temp file + rename).  The environment
variable ``STARDYN_CYLINDER_CAP`` overrides the oracle's subdivision cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from .certify import (
    InconsistencyError,
    cover_digraph,
    periodicity_report,
    render_dot,
    report_to_json,
)
from .orders import baldwin_le, forced_periods, nod_le, sharkovskii_le
from .patterns import (
    EnumerationCapExceeded,
    PatternError,
    StarPattern,
    enumerate_patterns,
    parse_pattern,
)
from .plmap import (
    DEFAULT_CYLINDER_CAP,
    CylinderCapExceeded,
    UncountablePeriodicSet,
    oracle_scan,
    realize,
)
from .survey import (
    SURVEY_FILTERS,
    classify_all,
    emit_table,
    filter_result,
    survey_to_json,
    verify_paper,
)

__all__ = ["RunConfig", "run", "main"]

_CAP_ENV = "STARDYN_CYLINDER_CAP"

_FORMATS = ("json", "csv", "dot", "text")

# formats each subcommand can emit; the first entry is its default
_SUBCOMMAND_FORMATS = {
    "analyze": ("json", "dot"),
    "enumerate": ("text", "json"),
    "survey": ("json", "csv"),
    "orders": ("text",),
    "oracle": ("json",),
    "verify-paper": ("text", "json"),
}


class UsageError(Exception):
    """Bad arguments or inputs; reported with a synopsis on stderr."""


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by all subcommands."""

    subcommand: str
    pattern_paths: tuple[str, ...]
    p_max: int
    max_iterate: int
    cylinder_cap: int
    format: str
    out: str | None
    jobs: int
    seed: int

    def __post_init__(self) -> None:
        if self.p_max < 1:
            raise UsageError("--pmax must be a positive integer")
        if self.max_iterate < 1:
            raise UsageError("--max-iterate must be a positive integer")
        if self.cylinder_cap < 1:
            raise UsageError(f"{_CAP_ENV} must be a positive integer")
        if self.jobs < 1:
            raise UsageError("--jobs must be a positive integer")
        if self.seed < 0:
            raise UsageError("--seed must be a non-negative integer")
        if self.format not in _FORMATS:
            raise UsageError(f"unknown format {self.format!r}; choose from {_FORMATS}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pmax", type=int, default=10, help="period horizon (default 10)")
    common.add_argument(
        "--max-iterate",
        type=int,
        default=2,
        help="highest iterate tried for chaos certificates (default 2)",
    )
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for surveys")
    common.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for sampled workloads; outputs never depend on unseeded randomness",
    )
    common.add_argument("--out", metavar="FILE", help="write output to FILE atomically")
    common.add_argument("--format", choices=_FORMATS, help="output format (subcommand-specific)")

    parser = argparse.ArgumentParser(
        prog="stardyn",
        description="Analyze continuous self-maps of star graphs defined by orbit patterns.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_analyze = sub.add_parser(
        "analyze", parents=[common], help="periodicity and chaos report for one pattern"
    )
    p_analyze.add_argument("--pattern", required=True, metavar="FILE", help="pattern file")
    p_analyze.add_argument("--dot", metavar="FILE", help="also write the covering digraph as DOT")
    p_analyze.add_argument("--json", metavar="FILE", help="also write the JSON report to FILE")

    p_enum = sub.add_parser("enumerate", parents=[common], help="list pattern classes")
    p_enum.add_argument("--n", type=int, required=True, help="number of branches")
    p_enum.add_argument("--k", type=int, required=True, help="orbit size")
    p_enum.add_argument(
        "--all-branches",
        action="store_true",
        help="only patterns whose orbit meets every branch",
    )

    p_survey = sub.add_parser("survey", parents=[common], help="classification campaign")
    p_survey.add_argument("--n", type=int, required=True, help="number of branches")
    p_survey.add_argument("--k", type=int, required=True, help="orbit size")
    p_survey.add_argument(
        "--filter",
        choices=SURVEY_FILTERS,
        help="restrict to classes where the center-map theorem does not apply",
    )

    p_orders = sub.add_parser("orders", parents=[common], help="period-forcing order queries")
    p_orders.add_argument(
        "--relation",
        required=True,
        choices=("shark", "baldwin", "nod"),
        help="interval order, t-od order, or n-od meet order",
    )
    p_orders.add_argument(
        "--t",
        type=int,
        default=1,
        help="order subscript: iterate count for baldwin, branch count for nod",
    )
    p_orders.add_argument("--m", type=int, help="candidate forced period (pair mode)")
    p_orders.add_argument("--k", type=int, help="forcing period (pair mode)")
    p_orders.add_argument("--segment", type=int, help="forcing period (set mode)")
    p_orders.add_argument("--bound", type=int, help="largest period listed (set mode)")

    p_oracle = sub.add_parser("oracle", parents=[common], help="exact periodic points")
    p_oracle.add_argument("--pattern", required=True, metavar="FILE", help="pattern file")
    p_oracle.add_argument("--period", type=int, required=True, help="period to scan for")

    p_verify = sub.add_parser(
        "verify-paper", parents=[common], help="recompute quoted reference facts"
    )
    p_verify.add_argument(
        "--json", action="store_true", help="emit the structured JSON report"
    )

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cap_text = os.environ.get(_CAP_ENV)
    if cap_text is None:
        cap = DEFAULT_CYLINDER_CAP
    else:
        try:
            cap = int(cap_text)
        except ValueError:
            raise UsageError(f"{_CAP_ENV} must be a positive integer") from None
    fmt = args.format
    allowed = _SUBCOMMAND_FORMATS[args.subcommand]
    if fmt is None:
        fmt = allowed[0]
    elif fmt not in allowed:
        raise UsageError(
            f"format {fmt!r} is not available for {args.subcommand!r}; choose from {allowed}"
        )
    paths = []
    if getattr(args, "pattern", None):
        paths.append(args.pattern)
    return RunConfig(
        subcommand=args.subcommand,
        pattern_paths=tuple(paths),
        p_max=args.pmax,
        max_iterate=args.max_iterate,
        cylinder_cap=cap,
        format=fmt,
        out=args.out,
        jobs=args.jobs,
        seed=args.seed,
    )


def _load_pattern(path: str) -> StarPattern:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [line.strip() for line in fh]
    except OSError as e:
        raise UsageError(f"cannot read pattern file {path!r}: {e.strerror}") from None
    lines = [line for line in lines if line]
    if len(lines) != 1:
        raise UsageError(f"pattern file {path!r} must contain exactly one pattern")
    try:
        return parse_pattern(lines[0])
    except PatternError as e:
        raise UsageError(f"invalid pattern in {path!r}: {e}") from None


def _json_text(payload: dict | list) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# Each handler returns ([(destination path or None for stdout, text), ...],
# exit code).  Nothing is written until the handler finishes, so failures
# never leave partial output.

Outputs = list[tuple[str | None, str]]


def _cmd_analyze(args: argparse.Namespace, cfg: RunConfig) -> tuple[Outputs, int]:
    p = _load_pattern(cfg.pattern_paths[0])
    outputs: Outputs = []
    dot_text = render_dot(cover_digraph(p)) if (args.dot or cfg.format == "dot") else None
    report_text = None
    if args.json or cfg.format == "json":
        report = periodicity_report(p, p_max=cfg.p_max, max_iterate=cfg.max_iterate)
        report_text = _json_text(report_to_json(report))
    if args.dot:
        outputs.append((args.dot, dot_text))
    if args.json:
        outputs.append((args.json, report_text))
    main_text = dot_text if cfg.format == "dot" else report_text
    if cfg.out:
        outputs.append((cfg.out, main_text))
    elif not (args.dot or args.json):
        outputs.append((None, main_text))
    return outputs, 0


def _cmd_enumerate(args: argparse.Namespace, cfg: RunConfig) -> tuple[Outputs, int]:
    try:
        patterns = enumerate_patterns(args.n, args.k, all_branches=args.all_branches)
    except PatternError as e:
        raise UsageError(str(e)) from None
    if cfg.format == "json":
        payload = {
            "n": args.n,
            "k": args.k,
            "all_branches": bool(args.all_branches),
            "patterns": [p.to_json_dict() for p in patterns],
        }
        text = _json_text(payload)
    else:
        text = "".join(p.to_text() + "\n" for p in patterns)
    return [(cfg.out, text)], 0


def _cmd_survey(args: argparse.Namespace, cfg: RunConfig) -> tuple[Outputs, int]:
    try:
        result = classify_all(
            args.n,
            args.k,
            cfg.p_max,
            max_iterate=cfg.max_iterate,
            jobs=cfg.jobs,
        )
    except PatternError as e:
        raise UsageError(str(e)) from None
    if args.filter:
        result = filter_result(result, args.filter)
    if cfg.format == "csv":
        text = emit_table(result.records, "csv")
    else:
        text = _json_text(survey_to_json(result))
    return [(cfg.out, text)], 0


def _cmd_orders(args: argparse.Namespace, cfg: RunConfig) -> tuple[Outputs, int]:
    pair_mode = args.m is not None or args.k is not None
    set_mode = args.segment is not None or args.bound is not None
    if pair_mode == set_mode:
        raise UsageError("orders needs either --m and --k, or --segment and --bound")
    relation = args.relation
    t = args.t
    if relation == "baldwin" and t < 2:
        raise UsageError("--relation baldwin needs --t at least 2")
    if relation == "nod" and t < 1:
        raise UsageError("--relation nod needs --t at least 1")

    def below(m: int, k: int) -> bool:
        if relation == "shark":
            return sharkovskii_le(m, k)
        if relation == "baldwin":
            return baldwin_le(t, m, k)
        return nod_le(t, m, k)

    try:
        if pair_mode:
            if args.m is None or args.k is None:
                raise UsageError("pair mode needs both --m and --k")
            text = ("true" if below(args.m, args.k) else "false") + "\n"
        else:
            if args.segment is None or args.bound is None:
                raise UsageError("set mode needs both --segment and --bound")
            if relation in ("shark", "baldwin"):
                forced = forced_periods(1 if relation == "shark" else t, args.segment, args.bound)
            else:
                forced = {m for m in range(1, args.bound + 1) if nod_le(t, m, args.segment)}
            text = " ".join(str(m) for m in sorted(forced)) + "\n"
    except ValueError as e:
        raise UsageError(str(e)) from None
    return [(cfg.out, text)], 0


def _witness_json(w, *, family: bool = False) -> dict:
    payload = {
        "point": {"branch": w.point.branch, "coord": f"{w.point.coord.numerator}/{w.point.coord.denominator}"},
        "period": w.period,
        "on_center_orbit": w.on_center_orbit,
    }
    if family:
        payload["uncountable_family"] = True
    return payload


def _cmd_oracle(args: argparse.Namespace, cfg: RunConfig) -> tuple[Outputs, int]:
    if args.period < 1:
        raise UsageError("--period must be a positive integer")
    p = _load_pattern(cfg.pattern_paths[0])
    m = realize(p)
    try:
        result = oracle_scan(m, args.period, cap=cfg.cylinder_cap)
        rows = [_witness_json(w) for w in result.witnesses]
        if result.family is not None:
            rows.append(_witness_json(result.family, family=True))
    except UncountablePeriodicSet as e:
        rows = [_witness_json(e.witness, family=True)]
    text = "".join(json.dumps(row, sort_keys=True) + "\n" for row in rows)
    return [(cfg.out, text)], 0


def _cmd_verify_paper(args: argparse.Namespace, cfg: RunConfig) -> tuple[Outputs, int]:
    report = verify_paper(p_max=cfg.p_max, max_iterate=cfg.max_iterate)
    if args.json or cfg.format == "json":
        text = _json_text(report.to_json())
    else:
        lines = [
            f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in report.checks
        ]
        verdict = "all checks passed" if report.all_passed else "some checks FAILED"
        lines.append(f"{sum(c.passed for c in report.checks)}/{len(report.checks)} {verdict}")
        text = "".join(line + "\n" for line in lines)
    if report.all_passed:
        return [(cfg.out, text)], 0
    sys.stderr.write("stardyn: inconsistency: reference verification failed\n")
    return [(cfg.out, text)], 1


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".stardyn-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _emit_outputs(outputs: Outputs) -> None:
    for path, text in outputs:
        if path is None:
            sys.stdout.write(text)
        else:
            _write_atomic(path, text)


_HANDLERS = {
    "analyze": _cmd_analyze,
    "enumerate": _cmd_enumerate,
    "survey": _cmd_survey,
    "orders": _cmd_orders,
    "oracle": _cmd_oracle,
    "verify-paper": _cmd_verify_paper,
}


def run(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch, and return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = _config_from_args(args)
        outputs, code = _HANDLERS[args.subcommand](args, cfg)
    except UsageError as e:
        sys.stderr.write(parser.format_usage())
        sys.stderr.write(f"stardyn: error: {e}\n")
        return 2
    except InconsistencyError as e:
        sys.stderr.write(f"stardyn: inconsistency: {e}\n")
        return 1
    except (CylinderCapExceeded, EnumerationCapExceeded) as e:
        sys.stderr.write(f"stardyn: resource cap exceeded: {e}\n")
        return 3
    try:
        _emit_outputs(outputs)
    except OSError as e:
        sys.stderr.write(parser.format_usage())
        sys.stderr.write(f"stardyn: error: cannot write output: {e}\n")
        return 2
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
